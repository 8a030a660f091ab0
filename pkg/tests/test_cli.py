from __future__ import annotations

import json

import pytest

from cdlab import cli
from cdlab.complexes import fixture_path


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_homology_fixtures(capsys):
    code, out, _ = run(capsys, "homology", str(fixture_path("cd2")))
    assert code == 0 and "betti: 1 1 1 1 0" in out
    code, out, _ = run(capsys, "homology", str(fixture_path("cd1")))
    assert code == 0 and "betti: 1 1 0" in out


def test_homology_bad_inputs(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{oops")
    code, _, err = run(capsys, "homology", str(bad))
    assert code == 2 and "JSON" in err
    code, _, _ = run(capsys, "homology", str(tmp_path / "missing.json"))
    assert code == 2
    broken = tmp_path / "broken.json"
    data = json.loads(fixture_path("cd2").read_text())
    data["boundary"]["A"] = [x for x in data["boundary"]["A"] if x != "a"]
    broken.write_text(json.dumps(data))
    code, out, _ = run(capsys, "homology", str(broken))
    assert code == 2 and "invalid" in out


def test_verify_list_and_only(capsys):
    code, out, _ = run(capsys, "verify", "--list")
    assert code == 0 and out.splitlines()[0].startswith("cd2.boundary:")
    code, out, _ = run(capsys, "verify", "--seed", "1", "--only", "cd2.betti,cd1.betti")
    assert code == 0 and "2/2 statements pass" in out
    code, _, err = run(capsys, "verify", "--only", "nope")
    assert code == 2 and "nope" in err


def test_verify_json(capsys):
    code, out, _ = run(capsys, "verify", "--only", "klein.cup_square", "--json")
    assert code == 0 and json.loads(out)[0]["status"] == "pass"


def test_bu_explicit_and_random(capsys):
    code, out, _ = run(capsys, "bu", "cos", "sin2")
    assert code == 0 and "Odd" in out and out.count(",") >= 2
    code, out, _ = run(capsys, "bu", "--random", "20", "--degree", "4", "--seed", "7")
    rows = out.splitlines()
    assert code == 0 and len(rows) == 21 and "Even 0" in rows[-1]
    code, out, _ = run(capsys, "bu", "1", "2.5")
    assert code == 0 and "Degenerate" in out


def test_bu_is_deterministic_and_uses_env_seed(capsys, monkeypatch):
    monkeypatch.setenv("CDLAB_SEED", "11")
    _, a, _ = run(capsys, "bu", "--random", "5")
    _, b, _ = run(capsys, "bu", "--random", "5", "--seed", "11")
    assert a == b
    monkeypatch.setenv("CDLAB_SEED", "x")
    code, _, _ = run(capsys, "bu", "--random", "5")
    assert code == 2


def test_parse_trig():
    f = cli.parse_trig("1 + 0.5*cos2 - sin")
    assert f.a0 == 1.0 and list(f.cos) == [0.0, 0.5] and list(f.sin) == [-1.0, 0.0]
    g = cli.parse_trig('{"a0": 0, "cos": [1], "sin": [0]}')
    assert list(g.cos) == [1.0]
    assert cli.parse_trig("2e-1cos").cos[0] == pytest.approx(0.2)
    with pytest.raises(cli.InputError):
        cli.parse_trig("tan")
    with pytest.raises(cli.InputError):
        cli.parse_trig("cos0")


def test_bu_bad_spec(capsys):
    code, _, err = run(capsys, "bu", "cos", "tan")
    assert code == 2 and "tan" in err
    code, _, _ = run(capsys, "bu", "cos")
    assert code == 2


def test_rank(capsys):
    code, out, _ = run(capsys, "rank", "0.5-1.5,1.5-2.5,0.5-2.5")
    assert code == 0 and out.startswith("rank: 2")
    code, _, _ = run(capsys, "rank", "0.5")
    assert code == 2


def test_klein_and_monodromy(capsys):
    code, out, _ = run(capsys, "klein")
    assert code == 0 and "<W^2, [K]> = 1" in out
    code, out, _ = run(capsys, "monodromy", "--steps", "64")
    assert code == 0 and out.count("-1 (doubled loop +1)") == 2


def test_scan_f7(capsys):
    code, out, _ = run(capsys, "scan-f7", "--grid", "12", "--seed", "2")
    assert code == 0 and "nonempty flagged set: pass" in out
    code, out, _ = run(capsys, "scan-f7", "--grid", "12", "--tol", "0")
    assert code == 0 and "flagged=0" in out
    code, _, _ = run(capsys, "scan-f7", "--grid", "8")
    assert code == 2


def test_unknown_command(capsys):
    assert cli.main(["frobnicate"]) == 2
