"""Configuration parsing, CLI subcommands, and report serialization."""

import io
import json

import pytest

from lagsem.cli import dump_kernel, main
from lagsem.config import ConfigError, SuiteConfig
from lagsem.reports import CheckResult, SuiteReport
from lagsem.suites import SUITE_NAMES, run_suite


def test_config_defaults_validate():
    cfg = SuiteConfig().validate()
    assert cfg.order == (0.5,)
    assert cfg.fast


def test_config_text_round_trip():
    cfg = SuiteConfig(
        order=(0.5, 1.0), k_max=60, seed=3, fast=False,
        atom_p=0.8, n_atoms=9, box_lo=0.1, box_hi=5.0,
    )
    assert SuiteConfig.from_text(cfg.to_text()) == cfg


def test_config_comments_and_blanks_ignored():
    text = "# suite setup\n\nk_max = 12   # truncation\n\nseed=4\n"
    cfg = SuiteConfig.from_text(text)
    assert cfg.k_max == 12
    assert cfg.seed == 4
    assert cfg.order == (0.5,)


def test_config_unknown_key_named():
    with pytest.raises(ConfigError, match="widget"):
        SuiteConfig.from_text("widget = 3\n")


def test_config_bad_order_named():
    with pytest.raises(ConfigError, match="order"):
        SuiteConfig.from_text("order = 0.5,-0.7\n")


def test_config_bad_int_named():
    with pytest.raises(ConfigError, match="k_max"):
        SuiteConfig.from_text("k_max = soon\n")


def test_config_bad_bool_named():
    with pytest.raises(ConfigError, match="fast"):
        SuiteConfig.from_text("fast = maybe\n")


def test_config_range_checks():
    with pytest.raises(ConfigError, match="atom_p"):
        SuiteConfig(atom_p=1.5).validate()
    with pytest.raises(ConfigError, match="k_max"):
        SuiteConfig(k_max=500).validate()
    with pytest.raises(ConfigError, match="box_lo"):
        SuiteConfig(box_lo=3.0, box_hi=1.0).validate()


def test_config_missing_equals_reports_line():
    with pytest.raises(ConfigError, match="line 2"):
        SuiteConfig.from_text("k_max = 10\nnonsense\n")


def test_config_file_round_trip(tmp_path):
    cfg = SuiteConfig(order=(1.5,), seed=11, fast=False)
    path = tmp_path / "suite.cfg"
    cfg.dump(path)
    assert SuiteConfig.load(path) == cfg


def test_cli_config_check_ok(tmp_path, capsys):
    path = tmp_path / "ok.cfg"
    path.write_text("order = 1.0\nseed = 2\n")
    assert main(["config-check", "--config", str(path)]) == 0
    captured = capsys.readouterr()
    assert "order = 1.0" in captured.out
    assert "seed = 2" in captured.out
    assert "configuration ok" in captured.err


def test_cli_config_check_rejects_bad_file(tmp_path, capsys):
    path = tmp_path / "bad.cfg"
    path.write_text("order = -0.9\n")
    assert main(["config-check", "--config", str(path)]) == 2
    assert "order" in capsys.readouterr().err


def test_cli_rejects_unknown_suite():
    with pytest.raises(SystemExit):
        main(["run", "--suite", "everything"])


def _fake_report(passed):
    results = [
        CheckResult("alpha", True, 0.5),
        CheckResult("beta", passed, None, {"note": "stub"}),
    ]
    return SuiteReport("special", SuiteConfig(), results)


def test_cli_run_exit_codes_and_lines(tmp_path, monkeypatch, capsys):
    import lagsem.cli as cli_mod

    monkeypatch.setattr(cli_mod, "run_suite", lambda cfg, suite: _fake_report(True))
    out = tmp_path / "rep.json"
    assert main(["run", "--suite", "special", "--out", str(out)]) == 0
    text = capsys.readouterr().out
    assert "PASS alpha value=0.5" in text
    assert "PASS beta" in text
    assert "2/2 checks passed" in text
    blob = json.loads(out.read_text())
    assert blob["all_passed"] is True

    monkeypatch.setattr(cli_mod, "run_suite", lambda cfg, suite: _fake_report(False))
    assert main(["run", "--suite", "special"]) == 1
    assert "FAIL beta" in capsys.readouterr().out


def test_cli_run_special_suite_end_to_end(tmp_path, capsys):
    out = tmp_path / "special.json"
    assert main(["run", "--suite", "special", "--out", str(out)]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert any(line.startswith("PASS bessel-recurrence") for line in lines)
    assert any(line.startswith("PASS laguerre-orthonormality") for line in lines)
    blob = json.loads(out.read_text())
    assert blob["suite"] == "special"
    assert blob["n_checks"] == 2
    assert blob["n_passed"] == 2
    assert set(blob) == {
        "version", "suite", "config", "n_checks", "n_passed",
        "all_passed", "checks", "timings",
    }
    for check in blob["checks"]:
        assert set(check) == {"check_id", "passed", "value", "detail"}


def test_report_deterministic_without_timings():
    cfg = SuiteConfig(seed=5)
    first = run_suite(cfg, "special").to_json(include_timings=False)
    second = run_suite(cfg, "special").to_json(include_timings=False)
    assert first == second
    assert "timings" not in json.loads(first)


def test_run_suite_rejects_unknown_name():
    with pytest.raises(ValueError, match="unknown suite"):
        run_suite(SuiteConfig(), "nope")


def test_suite_names_cover_groups():
    assert "all" in SUITE_NAMES
    for name in ("special", "kernel", "critical", "operators", "bounds", "hardy"):
        assert name in SUITE_NAMES


def test_dump_heat_schema():
    buf = io.StringIO()
    counts = dump_kernel("heat", SuiteConfig(), buf, t_values=(0.25,), n_points=40)
    lines = buf.getvalue().splitlines()
    assert lines[0] == "t,x,y,value,family"
    assert counts == {"rows": 1600, "skipped": 0}
    assert len(lines) == 1601
    cells = lines[1].split(",")
    assert float(cells[0]) == 0.25
    assert float(cells[3]) > 0.0
    assert cells[4] == "heat[nu=0.5]"


def test_dump_heat_two_dimensional_columns():
    buf = io.StringIO()
    cfg = SuiteConfig(order=(0.5, 1.0))
    counts = dump_kernel("heat", cfg, buf, t_values=(0.25, 1.0), n_points=6)
    lines = buf.getvalue().splitlines()
    assert lines[0] == "t,x1,x2,y1,y2,value,family"
    assert counts["rows"] == 2 * 36
    assert len(lines) == 1 + 2 * 36


def test_dump_riesz_skips_diagonal():
    buf = io.StringIO()
    counts = dump_kernel("riesz", SuiteConfig(), buf, n_points=12)
    lines = buf.getvalue().splitlines()
    assert lines[0] == "x,y,k,value"
    assert counts["skipped"] == 12
    assert counts["rows"] == 12 * 12 - 12
    assert all(line.split(",")[2] == "1" for line in lines[1:])


def test_dump_rejects_unknown_kind():
    with pytest.raises(ValueError, match="kind"):
        dump_kernel("wave", SuiteConfig(), io.StringIO())


def test_cli_dump_writes_file_and_warns(tmp_path, capsys):
    out = tmp_path / "riesz.csv"
    assert main(["dump", "--kind", "riesz", "--out", str(out), "--points", "10"]) == 0
    captured = capsys.readouterr()
    assert "skipped 10 diagonal pairs" in captured.err
    assert f"wrote 90 rows to {out}" in captured.out
    assert out.read_text().splitlines()[0] == "x,y,k,value"


def test_cli_dump_deterministic_bytes(tmp_path):
    a = tmp_path / "a.csv"
    b = tmp_path / "b.csv"
    args = ["dump", "--kind", "heat", "--points", "15", "--t", "0.5"]
    assert main(args + ["--out", str(a)]) == 0
    assert main(args + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_cli_seed_override(tmp_path, monkeypatch, capsys):
    import lagsem.cli as cli_mod

    path = tmp_path / "seeded.cfg"
    path.write_text("seed = 1\n")
    seen = []

    def spy(cfg, suite):
        seen.append(cfg.seed)
        return _fake_report(True)

    monkeypatch.setattr(cli_mod, "run_suite", spy)
    assert main(["run", "--config", str(path), "--seed", "42"]) == 0
    assert main(["run", "--config", str(path)]) == 0
    capsys.readouterr()
    assert seen == [42, 1]
