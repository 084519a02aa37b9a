"""Flat key=value configuration for the verification suites.

The format is one ``key = value`` pair per line, ``#`` comments, blank
lines ignored.  Parsing is strict: unknown keys and malformed values are
errors that name the offending field, and a config survives a
dump/parse round trip unchanged.
"""

from __future__ import annotations

from dataclasses import dataclass, fields

__all__ = ["ConfigError", "SuiteConfig"]


class ConfigError(ValueError):
    """Invalid configuration; the message names the field."""


@dataclass(frozen=True)
class SuiteConfig:
    order: tuple = (0.5,)
    k_max: int = 40
    seed: int = 7
    fast: bool = True
    atom_p: float = 0.9
    n_atoms: int = 5
    box_lo: float = 0.05
    box_hi: float = 4.0

    def validate(self) -> "SuiteConfig":
        if not self.order or any(not v >= -0.5 for v in self.order):
            raise ConfigError("order: every entry must be a finite number >= -1/2")
        if len(self.order) > 3:
            raise ConfigError("order: at most three axes are supported")
        if not 0 <= self.k_max <= 200:
            raise ConfigError("k_max: must lie in [0, 200]")
        if not isinstance(self.seed, int):
            raise ConfigError("seed: must be an integer")
        if not 0.0 < self.atom_p <= 1.0:
            raise ConfigError("atom_p: must lie in (0, 1]")
        if self.n_atoms < 1:
            raise ConfigError("n_atoms: must be at least 1")
        if not 0.0 <= self.box_lo < self.box_hi:
            raise ConfigError("box_lo/box_hi: need 0 <= box_lo < box_hi")
        return self

    def to_text(self) -> str:
        lines = []
        for f in fields(self):
            v = getattr(self, f.name)
            if f.name == "order":
                v = ",".join(repr(float(x)) for x in v)
            elif isinstance(v, bool):
                v = "true" if v else "false"
            else:
                v = repr(v)
            lines.append(f"{f.name} = {v}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "SuiteConfig":
        known = {f.name: f for f in fields(cls)}
        values = {}
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"line {lineno}: expected key = value, got {raw!r}")
            key, _, val = line.partition("=")
            key, val = key.strip(), val.strip()
            if key not in known:
                raise ConfigError(f"{key}: unknown configuration key")
            try:
                values[key] = _parse_value(key, val)
            except ConfigError:
                raise
            except ValueError:
                raise ConfigError(f"{key}: cannot parse value {val!r}") from None
        return cls(**values).validate()

    @classmethod
    def load(cls, path) -> "SuiteConfig":
        with open(path, "r", encoding="utf-8") as fh:
            return cls.from_text(fh.read())

    def dump(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(self.to_text())

    def to_json_dict(self) -> dict:
        return {
            "order": [float(v) for v in self.order],
            "k_max": self.k_max,
            "seed": self.seed,
            "fast": self.fast,
            "atom_p": self.atom_p,
            "n_atoms": self.n_atoms,
            "box_lo": self.box_lo,
            "box_hi": self.box_hi,
        }


def _parse_value(key: str, val: str):
    if key == "order":
        return tuple(float(part) for part in val.split(",") if part.strip() != "")
    if key in ("k_max", "seed", "n_atoms"):
        return int(val)
    if key == "fast":
        low = val.lower()
        if low in ("true", "1", "yes"):
            return True
        if low in ("false", "0", "no"):
            return False
        raise ConfigError(f"{key}: expected a boolean, got {val!r}")
    if key in ("atom_p", "box_lo", "box_hi"):
        return float(val)
    raise ConfigError(f"{key}: unknown configuration key")
