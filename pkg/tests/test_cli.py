"""The verification front end."""
import json

import pytest
from click.testing import CliRunner

from moulds.cli import load, main, run
from moulds.config import ConfigError, RunConfig
from moulds.mould import paj


@pytest.fixture
def runner():
    return CliRunner()


def invoke(runner, *args):
    return runner.invoke(main, list(args), catch_exceptions=False)


def test_paj_suite_passes(runner):
    r = invoke(runner, "run", "--suite", "paj", "-L", "4")
    assert r.exit_code == 0
    rep = json.loads(r.output)
    assert rep["schema"] == "moulds-report/1" and rep["ok"]
    assert rep["config"]["seed"] == 0
    assert {c["status"] for c in rep["checks"]} == {"pass"}
    assert all(c["anchor"] for c in rep["checks"])


def test_unknown_suite_is_usage_error(runner):
    r = runner.invoke(main, ["run", "--suite", "nope"])
    assert r.exit_code == 2


@pytest.mark.parametrize("args", [["-L", "99"], ["-N", "-1"], ["--gamma", "q7"], ["--seed", "-3"]])
def test_caps_and_bad_values(runner, args):
    assert runner.invoke(main, ["run", "--suite", "words", *args]).exit_code == 2


def test_report_is_deterministic(runner):
    args = ["run", "--suite", "mould", "--suite", "bal", "-L", "2", "-N", "3", "--seed", "7"]
    a, b = invoke(runner, *args).output, invoke(runner, *args).output
    assert a == b


def test_seed_changes_random_inputs_only():
    a = run(RunConfig(max_length=2, max_degree=3, suites=("ma",), seed=1))
    b = run(RunConfig(max_length=2, max_degree=3, suites=("ma",), seed=2))
    assert a["ok"] and b["ok"] and a["config"]["seed"] != b["config"]["seed"]


def test_text_format(runner):
    r = invoke(runner, "run", "--suite", "words", "--format", "text")
    assert r.exit_code == 0
    assert r.output.splitlines()[-1].startswith("2 passed, 0 failed")


def test_smoke_configuration(runner, tmp_path):
    out = tmp_path / "report.json"
    r = invoke(runner, "run", "-L", "2", "-N", "3", "--out", str(out))
    rep = json.loads(out.read_text())
    assert r.exit_code == 0, [c for c in rep["checks"] if c["status"] != "pass"]
    assert rep["summary"]["fail"] == 0 and len(rep["checks"]) > 40


def test_failing_check_exits_one(monkeypatch, runner):
    from moulds import checks
    bad = checks.Check("words", "always-fails", "none", lambda ctx: (False, {"why": "test"}))
    monkeypatch.setitem(checks.REGISTRY, "words", checks.REGISTRY["words"] + [bad])
    r = runner.invoke(main, ["run", "--suite", "words"])
    assert r.exit_code == 1
    rep = json.loads(r.output)
    assert [c["witness"] for c in rep["checks"] if c["status"] == "fail"] == [{"why": "test"}]


def test_workers_do_not_change_the_report(monkeypatch):
    cfg = dict(max_length=2, max_degree=3, suites=("words", "ratfun"))
    serial = run(RunConfig(**cfg, workers=1))
    parallel = run(RunConfig(**cfg, workers=2))
    assert serial == parallel


def test_config_validation():
    with pytest.raises(ConfigError):
        RunConfig(max_length=7)
    with pytest.raises(ConfigError):
        RunConfig(suites=("nope",))
    assert "output" not in RunConfig(output="x").to_json()


def test_grt_solve(runner):
    r = invoke(runner, "grt-solve", "--degree", "3")
    assert r.exit_code == 0
    rep = json.loads(r.output)
    rows = {row["degree"]: row for row in rep["degrees"]}
    assert [rows[d]["dimension"] for d in (1, 2, 3)] == [0, 1, 1]
    assert rows[3]["representative"]["terms"]
    assert rows[3]["dmr0_iota0"] and rows[3]["balanced"]
    assert rows[2]["dmr_iota0"] and not rows[2]["dmr0_iota0"]


def test_grt_solve_degree_zero_and_cap(runner):
    r = invoke(runner, "grt-solve", "--degree", "0")
    assert r.exit_code == 0 and json.loads(r.output)["degrees"] == []
    assert runner.invoke(main, ["grt-solve", "--degree", "5"]).exit_code == 2
    assert runner.invoke(main, ["grt-solve", "--degree", "3", "--cap", "2"]).exit_code == 2


@pytest.mark.parametrize("what", ["paj", "pic", "minus-paj", "grt"])
def test_export_import_roundtrip(runner, tmp_path, what):
    path = tmp_path / f"{what}.json"
    assert invoke(runner, "export", what, "-L", "3", "--out", str(path)).exit_code == 0
    text = path.read_text()
    r = invoke(runner, "import", str(path))
    assert r.exit_code == 0
    assert json.loads(r.output) == json.loads(text)


def test_export_paj_equals_library_value(runner, tmp_path):
    path = tmp_path / "paj.json"
    invoke(runner, "export", "paj", "-L", "3", "--out", str(path))
    assert load(json.loads(path.read_text())) == paj(3)


def test_import_unreduced_rational(runner, tmp_path):
    obj = paj(2).to_json()
    obj["components"][1]["value"]["num"][0][0] = "2/2"
    path = tmp_path / "m.json"
    path.write_text(json.dumps(obj))
    r = invoke(runner, "import", str(path))
    assert r.exit_code == 0 and '"2/2"' not in r.output
    r = runner.invoke(main, ["import", "--strict", str(path)])
    assert r.exit_code == 1


def test_import_pol_family_with_denominator(runner, tmp_path):
    obj = paj(2).to_json()
    obj["family"] = "Pol"
    path = tmp_path / "m.json"
    path.write_text(json.dumps(obj))
    r = runner.invoke(main, ["import", str(path)])
    assert r.exit_code == 1 and "error" in r.output


def test_import_rejects_non_primitive_form(runner, tmp_path):
    obj = paj(1).to_json()
    obj["components"][1]["value"]["den"] = [[[2], 1]]
    path = tmp_path / "m.json"
    path.write_text(json.dumps(obj))
    r = invoke(runner, "import", str(path))
    assert r.exit_code == 0 and json.loads(r.output)["components"][1]["value"]["den"] == [[[1], 1]]
    assert runner.invoke(main, ["import", "--strict", str(path)]).exit_code == 1


def test_import_malformed_json(runner, tmp_path):
    path = tmp_path / "m.json"
    path.write_text("{not json")
    assert runner.invoke(main, ["import", str(path)]).exit_code == 1
