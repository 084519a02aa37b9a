"""Critical scale function, its slow variation, and Vitali-type coverings."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .special import MultiOrder

__all__ = [
    "rho",
    "rho_axis",
    "check_slow_variation",
    "SlowVariationReport",
    "Ball",
    "Covering",
    "build_covering",
]


def rho(order: MultiOrder, x):
    """Critical scale (1/16) min{1/|x|, 1, x_j for active axes}.

    x has shape (..., n); returns the matching leading shape.  The
    constant entry 1 is always part of the minimum, so rho <= 1/16
    everywhere.
    """
    if not isinstance(order, MultiOrder):
        order = MultiOrder(order)
    x = np.asarray(x, dtype=float)
    if x.ndim == 0:
        x = x[None]
    if x.shape[-1] != order.n:
        raise ValueError("point dimension does not match order dimension")
    if np.any(x <= 0.0):
        raise ValueError("points must lie in the open positive orthant")
    norm = np.sqrt(np.sum(x * x, axis=-1))
    entries = [1.0 / norm, np.ones_like(norm)]
    for j in order.active_axes:
        entries.append(x[..., j])
    val = np.min(np.stack(entries, axis=0), axis=0) / 16.0
    return val if val.ndim else float(val)


def rho_axis(nu_j: float, x_j):
    """Per-axis critical scale: min{x, 1/x}/16 for active orders, min{1, 1/x}/16 otherwise."""
    if nu_j < -0.5:
        raise ValueError("order must be >= -1/2")
    x = np.asarray(x_j, dtype=float)
    if np.any(x <= 0.0):
        raise ValueError("points must be strictly positive")
    first = x if nu_j > -0.5 else np.ones_like(x)
    val = np.minimum(first, 1.0 / x) / 16.0
    return val if val.ndim else float(val)


@dataclass
class SlowVariationReport:
    """Outcome of the two-sided comparability check on dilated balls."""

    n_pairs: int
    min_ratio: float
    max_ratio: float
    violations: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations


def check_slow_variation(
    order: MultiOrder,
    n_pairs: int = 10_000,
    box_lo: float = 0.05,
    box_hi: float = 10.0,
    seed: int = 7,
) -> SlowVariationReport:
    """Sample pairs y in 4B(x, rho(x)) and verify rho(y)/rho(x) in [1/2, 2].

    Base points are log-uniform in the box, companions uniform in the
    dilated ball intersected with the open orthant.
    """
    if not isinstance(order, MultiOrder):
        order = MultiOrder(order)
    rng = np.random.default_rng(seed)
    n = order.n
    xs = np.exp(rng.uniform(math.log(box_lo), math.log(box_hi), size=(n_pairs, n)))
    rx = np.atleast_1d(rho(order, xs))
    # draw offsets uniformly in the dilated ball, resampling until the
    # companion stays inside the orthant
    ys = np.empty_like(xs)
    for i in range(n_pairs):
        for _ in range(100):
            u = rng.normal(size=n)
            u /= np.linalg.norm(u)
            radius = 4.0 * rx[i] * rng.uniform() ** (1.0 / n)
            cand = xs[i] + radius * u
            if np.all(cand > 0.0):
                ys[i] = cand
                break
        else:
            ys[i] = xs[i]
    ry = np.atleast_1d(rho(order, ys))
    ratios = ry / rx
    bad = (ratios < 0.5) | (ratios > 2.0)
    violations = [
        {"x": xs[i].tolist(), "y": ys[i].tolist(), "ratio": float(ratios[i])}
        for i in np.nonzero(bad)[0][:50]
    ]
    return SlowVariationReport(
        n_pairs=n_pairs,
        min_ratio=float(ratios.min()),
        max_ratio=float(ratios.max()),
        violations=violations,
    )


@dataclass(frozen=True)
class Ball:
    center: tuple
    radius: float

    def __post_init__(self):
        center = tuple(float(c) for c in np.atleast_1d(np.asarray(self.center, dtype=float)))
        object.__setattr__(self, "center", center)
        if not self.radius > 0.0:
            raise ValueError("ball radius must be positive")

    @property
    def ndim(self) -> int:
        return len(self.center)

    @property
    def volume(self) -> float:
        n = self.ndim
        return float(
            math.pi ** (n / 2.0) / math.gamma(n / 2.0 + 1.0) * self.radius**n
        )

    def contains(self, pts) -> np.ndarray:
        pts = np.atleast_2d(np.asarray(pts, dtype=float))
        d = np.linalg.norm(pts - np.asarray(self.center), axis=-1)
        return d < self.radius


def _bump_profile(u: np.ndarray) -> np.ndarray:
    # C^2 compactly supported profile (1 - u^2)^3 on u < 1
    core = np.clip(1.0 - u * u, 0.0, None)
    return core * core * core


@dataclass
class Covering:
    """Balls B(x_i, rho(x_i)) covering a box, with fifth-radius disjointness."""

    order: MultiOrder
    box_lo: tuple
    box_hi: tuple
    centers: np.ndarray
    radii: np.ndarray

    def balls(self) -> list[Ball]:
        return [Ball(tuple(c), float(r)) for c, r in zip(self.centers, self.radii)]

    def bump_values(self, pts) -> np.ndarray:
        """Normalized partition functions at (M, n) points, shape (n_balls, M)."""
        pts = np.atleast_2d(np.asarray(pts, dtype=float))
        d = np.linalg.norm(pts[None, :, :] - self.centers[:, None, :], axis=-1)
        raw = _bump_profile(d / self.radii[:, None])
        denom = raw.sum(axis=0)
        if np.any(denom <= 0.0):
            raise ValueError("partition undefined: a point is not interior to any ball")
        return raw / denom[None, :]

    def verify(self, points_per_axis: int = 200) -> dict:
        """Invariant checks: disjointness, coverage, overlap bound, partition sum."""
        lo = np.asarray(self.box_lo)
        hi = np.asarray(self.box_hi)
        n = lo.size
        axes = [np.linspace(a, b, points_per_axis) for a, b in zip(lo, hi)]
        mesh = np.meshgrid(*axes, indexing="ij")
        pts = np.stack([m.ravel() for m in mesh], axis=-1)

        # pairwise fifth-radius disjointness, row-chunked to bound memory
        disjoint = True
        m = len(self.radii)
        row_chunk = max(1, 4_000_000 // max(1, m))
        for start in range(0, m, row_chunk):
            stop = min(start + row_chunk, m)
            block = self.centers[start:stop]
            dist = np.linalg.norm(block[:, None, :] - self.centers[None, :, :], axis=-1)
            thresh = (self.radii[start:stop, None] + self.radii[None, :]) / 5.0
            dist[np.arange(stop - start), np.arange(start, stop)] = np.inf
            if not np.all(dist >= thresh - 1e-12):
                disjoint = False
                break

        max_overlap = 0
        worst_margin = 0.0
        partition_err = 0.0
        inv_r2 = 1.0 / self.radii**2
        chunk = max(1, 2_000_000 // max(1, len(self.radii)))
        for start in range(0, pts.shape[0], chunk):
            block = pts[start : start + chunk]
            diff = block[None, :, :] - self.centers[:, None, :]
            rel2 = np.einsum("ijk,ijk->ij", diff, diff) * inv_r2[:, None]
            inside = rel2 < 1.0
            max_overlap = max(max_overlap, int(inside.sum(axis=0).max()))
            worst_margin = max(worst_margin, math.sqrt(float(rel2.min(axis=0).max())))
            core = np.clip(1.0 - rel2, 0.0, None)
            raw = core * core * core
            sums = raw.sum(axis=0)
            if np.any(sums <= 0.0):
                partition_err = math.inf
            else:
                partition_err = max(
                    partition_err, float(np.abs((raw / sums[None, :]).sum(axis=0) - 1.0).max())
                )
        return {
            "n_balls": int(len(self.radii)),
            "fifth_radius_disjoint": disjoint,
            "covers_box": bool(worst_margin < 1.0),
            "max_cover_margin": worst_margin,
            "max_overlap": max_overlap,
            "partition_sum_error": partition_err,
        }

    def to_json_dict(self) -> dict:
        return {
            "order": list(self.order.nu),
            "box_lo": list(self.box_lo),
            "box_hi": list(self.box_hi),
            "balls": [
                {"center": list(map(float, c)), "radius": float(r)}
                for c, r in zip(self.centers, self.radii)
            ],
        }


def build_covering(order: MultiOrder, box_lo, box_hi, min_margin: float = 0.05) -> Covering:
    """Greedy maximal packing of fifth-radius balls at the critical scale.

    Candidate centers sweep a lattice with spacing min(rho)/10 in
    lexicographic order; a candidate is accepted when its fifth-radius
    ball is disjoint from all previously accepted ones.  By slow
    variation the accepted full-radius balls cover the box.

    The box must stay at least ``min_margin`` away from the coordinate
    hyperplanes; coverings of boxes touching the boundary are not defined.
    """
    if not isinstance(order, MultiOrder):
        order = MultiOrder(order)
    lo = np.broadcast_to(np.asarray(box_lo, dtype=float), (order.n,)).copy()
    hi = np.broadcast_to(np.asarray(box_hi, dtype=float), (order.n,)).copy()
    if np.any(hi <= lo):
        raise ValueError("box needs hi > lo componentwise")
    if np.any(lo < min_margin):
        raise ValueError(f"box must keep a margin of {min_margin} from the boundary")

    probe = np.stack(
        np.meshgrid(*[np.linspace(a, b, 41) for a, b in zip(lo, hi)], indexing="ij"), axis=-1
    ).reshape(-1, order.n)
    rho_min = float(np.min(rho(order, probe)))
    spacing = rho_min / 10.0

    axes = [np.arange(a, b + 0.5 * spacing, spacing) for a, b in zip(lo, hi)]
    lattice = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, order.n)
    lattice_rho = np.atleast_1d(rho(order, lattice))

    # spatial hash: conflicts only reach 2 r_cap / 5, so with that cell
    # size a 3**n neighborhood around the candidate's cell is exhaustive
    r_cap = float(np.max(lattice_rho))
    cell = 2.0 * r_cap / 5.0
    key_rows = np.floor(lattice / cell).astype(np.int64).tolist()
    offsets = (
        np.stack(np.meshgrid(*([np.arange(-1, 2)] * order.n), indexing="ij"), axis=-1)
        .reshape(-1, order.n)
        .tolist()
    )

    acc_pts = np.empty((lattice.shape[0], order.n))
    acc_r = np.empty(lattice.shape[0])
    buckets: dict[tuple, list] = {}
    n_acc = 0
    for cand, rc, key in zip(lattice, lattice_rho, key_rows):
        near = []
        for off in offsets:
            hits = buckets.get(tuple(k + o for k, o in zip(key, off)))
            if hits:
                near.extend(hits)
        if near:
            prev = np.asarray(near)
            d2 = np.sum((acc_pts[prev] - cand) ** 2, axis=-1)
            if np.any(d2 < ((acc_r[prev] + rc) / 5.0) ** 2):
                continue
        acc_pts[n_acc] = cand
        acc_r[n_acc] = rc
        buckets.setdefault(tuple(key), []).append(n_acc)
        n_acc += 1
    centers, radii = acc_pts[:n_acc], acc_r[:n_acc]
    return Covering(
        order=order,
        box_lo=tuple(map(float, lo)),
        box_hi=tuple(map(float, hi)),
        centers=np.asarray(centers),
        radii=np.asarray(radii),
    )
