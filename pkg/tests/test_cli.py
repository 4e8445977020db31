import io
import json
import subprocess
import sys

import pytest

from locmult.cli import main, parse_function, print_function
from locmult.pwl import F0, rat


def run(*argv):
    buf = io.StringIO()
    code = main(list(argv), out=buf)
    return code, buf.getvalue()


def test_parse_and_print():
    f = parse_function("pwl[(0,0);(1,1)]")
    assert f == F0
    assert print_function(f) == "pwl[(0,0);(1,1)]"
    assert parse_function("pwl[(0,0);(1/2,1/2);(1,0)]")(rat(1, 2)) == rat(1, 2)
    with pytest.raises(ValueError):
        parse_function("pwl[(0,0);(0,1)]")


def test_fn_command():
    code, out = run("fn", "pwl[(0,0);(1/2,1/2);(1,0)]", "--at", "1/2", "--at", "3/4")
    assert code == 0
    assert out.splitlines() == ["pwl[(0,0);(1/2,1/2);(1,0)]", "f(1/2) = 1/2", "f(3/4) = 1/4"]


@pytest.mark.parametrize("argv", [
    ["run", "--count", "0"],
    ["run", "--suite", "bogus"],
    ["run", "--depth", "0", "--suite", "monster"],
    ["fn", "pwl[(0,0);(0,1)]"],
    ["fn", "pwl[(0,0);(1,1)]", "--at", "x"],
    ["monster", "build", "--mu", "3/4"],
    ["localize", "--base", "pwl[(0,1);(1,1)]"],
    [],
])
def test_usage_errors_exit_2(argv):
    code, _ = run(*argv)
    assert code == 2


def test_unwritable_json_path(tmp_path):
    code, _ = run("run", "--suite", "riesz", "--count", "2", "--json", str(tmp_path / "no" / "x.json"))
    assert code == 2


def test_riesz_run_example(tmp_path):
    path = tmp_path / "r.json"
    code, out = run("run", "--suite", "riesz", "--seed", "1", "--count", "100", "--json", str(path))
    assert code == 0
    assert "PASS riesz.decompose: 100/100" in out
    rows = json.loads(path.read_text())
    assert len(rows) == 100
    for row in rows:
        assert set(row) == {"suite", "check", "instance_id", "passed", "witness"}
        assert row["suite"] == "riesz" and row["passed"] is True


def test_seed_from_environment(monkeypatch, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    monkeypatch.setenv("LOCMULT_SEED", "9")
    assert run("run", "--suite", "monoid", "--count", "5", "--json", str(a), "--quiet")[0] == 0
    assert run("run", "--suite", "monoid", "--count", "5", "--seed", "9", "--json", str(b), "--quiet")[0] == 0
    assert a.read_bytes() == b.read_bytes()
    monkeypatch.setenv("LOCMULT_SEED", "nine")
    assert run("run", "--suite", "monoid", "--count", "5")[0] == 2


def test_run_all_is_deterministic(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run("run", "--suite", "all", "--count", "3", "--seed", "4", "--json", str(a), "--quiet")[0] == 0
    assert run("run", "--suite", "all", "--count", "3", "--seed", "4", "--json", str(b), "--quiet")[0] == 0
    assert a.read_bytes() == b.read_bytes()
    suites = {row["suite"] for row in json.loads(a.read_text())}
    assert suites == {"lattice", "group", "monoid", "riesz", "intervals", "localization", "monster"}


def test_quiet_prints_nothing():
    code, out = run("run", "--suite", "riesz", "--count", "3", "--quiet")
    assert code == 0 and out == ""


def test_localize_examples():
    code, out = run("localize", "--base", "pwl[(0,0);(1,1)]", "--sup", "pwl[(0,0);(1/4,1/16);(1,1/16)]")
    assert code == 0
    data = json.loads(out)
    assert data["min_ideal_n"] == 5
    assert data["class"] == {"base": "pwl[(0,0);(1,1)]", "sup": "pwl[(0,0);(1/4,1/16);(1,1/16)]"}
    code, out = run("localize", "--verbose")
    data = json.loads(out)
    assert data["min_ideal_n"] == 2 and all(data["checks"].values())
    code, out = run("localize", "--sup", "pwl[(0,0);(1,0)]")
    assert code == 0 and json.loads(out)["min_ideal_n"] is None


def test_monster_build(tmp_path):
    path = tmp_path / "m.json"
    code, out = run("monster", "build", "--depth", "3", "--out", str(path))
    assert code == 0
    assert "oscillation (0, 1/16)" in out
    data = json.loads(path.read_text())
    assert data["monster"]["oscillation"] == ["0", "1/16"]
    assert [s["rho"] for s in data["tower"]] == ["1/4", "1/8", "1/16"]
    assert all(all(s["tower_certificates"].values()) for s in data["tower"])


def test_monster_suite_depth_three():
    from locmult.suites import SuiteConfig, run_suite
    rows = run_suite("monster", SuiteConfig(seed=0, count=4, depth=3))
    stages = [r for r in rows if r.check == "tower_stage"]
    assert len(stages) == 3 and all(r.passed for r in stages)


def test_config_rejects_zero_count():
    from locmult.suites import SuiteConfig
    with pytest.raises(ValueError):
        SuiteConfig(count=0)


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "locmult", "fn", "pwl[(0,0);(1,1)]", "--at", "1/3"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[-1] == "f(1/3) = 1/3"
