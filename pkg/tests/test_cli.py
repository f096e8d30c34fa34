import hashlib
import json

import pytest

from k3degen.cli import main

SS21 = "ss:p=2,sigma0=1"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_lattice_info(capsys):
    code, out, _ = run(capsys, "lattice", "info", "ss:p=2,sigma0=3")
    assert code == 0
    assert "sigma0: 3" in out and "det: -64" in out


def test_lattice_info_rejects_p_squared(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"rank": 2, "gram": [[4, 0], [0, 1]]}))
    code, out, err = run(capsys, "lattice", "info", str(path), "--p", "2")
    assert code == 2
    assert "discriminant group not killed by p" in err
    assert out == ""


def test_synth_info_round_trip(tmp_path, capsys):
    g = tmp_path / "g.json"
    assert run(capsys, "lattice", "synth", "--p", "3", "--sigma0", "1", "--out", str(g))[0] == 0
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    _, out_file, _ = run(capsys, "lattice", "info", str(g), "--out", str(a))
    _, out_ss, _ = run(capsys, "lattice", "info", "ss:p=3,sigma0=1", "--out", str(b))
    assert a.read_bytes() == b.read_bytes()
    assert out_file == out_ss


def test_construct_then_decide(tmp_path, capsys):
    c = tmp_path / "c.json"
    assert run(capsys, "construct", "--lattice", SS21, "--r", "1", "--out", str(c))[0] == 0
    code, out, _ = run(capsys, "decide", "--lattice", SS21, "--classes", str(c), "--p", "2")
    assert code == 10 and "NONDEGENERATE" in out


def test_decide_empty_and_finite_height(tmp_path, capsys):
    e = tmp_path / "e.json"
    e.write_text(json.dumps({"classes": [], "labels": []}))
    assert run(capsys, "decide", "--lattice", SS21, "--classes", str(e))[0] == 0
    c = tmp_path / "c.json"
    run(capsys, "construct", "--lattice", SS21, "--r", "2", "--out", str(c))
    assert run(capsys, "decide", "--lattice", SS21, "--classes", str(c), "--finite-height")[0] == 0


def test_audit(tmp_path, capsys):
    c, cs = tmp_path / "c.json", tmp_path / "cs.json"
    run(capsys, "construct", "--lattice", "ss:p=3,sigma0=2", "--r", "3", "--out", str(c))
    run(capsys, "charsub", "gen", "--p", "3", "--sigma0", "2", "--seed", "4", "--out", str(cs))
    code, out, _ = run(capsys, "audit", "--lattice", "ss:p=3,sigma0=2", "--charsub", str(cs), "--classes", str(c))
    assert code == 10 and "all four conditions hold" in out


@pytest.mark.parametrize(
    "argv,needle",
    [
        (["decide", "--lattice", SS21, "--classes", "/nonexistent.json"], "no such file"),
        (["decide", "--lattice", "ss:p=2", "--classes", "x.json"], "shorthand"),
        (["lattice", "info", SS21, "--p", "3"], "conflicts"),
        (["charsub", "gen", "--p", "2", "--sigma0", "1", "--out", "x.json"], "explicit seed"),
        (["charsub", "gen", "--p", "4", "--sigma0", "1", "--seed", "1", "--out", "x.json"], "prime"),
        (["construct", "--lattice", "ss:p=2,sigma0=3", "--r", "2", "--out", "x.json"], "at least sigma0"),
        (["lattice", "synth", "--p", "2", "--sigma0", "11", "--out", "x.json"], "1..10"),
    ],
)
def test_input_errors_exit_2(argv, needle, capsys, tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    code, out, err = run(capsys, *argv)
    assert code == 2
    assert needle in err
    assert out == ""


def test_malformed_json(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, err = run(capsys, "decide", "--lattice", SS21, "--classes", str(bad))
    assert code == 2 and "malformed JSON" in err


def test_bad_flags_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["decide", "--lattice"])
    assert exc.value.code == 2


def test_manifest_and_replay(tmp_path, capsys, monkeypatch):
    monkeypatch.chdir(tmp_path)
    argv = ["charsub", "gen", "--p", "5", "--sigma0", "2", "--seed", "17", "--out", "cs.json", "--manifest", "m.json"]
    assert run(capsys, *argv)[0] == 0
    manifest = json.loads((tmp_path / "m.json").read_text())
    assert manifest["params"]["seed"] == 17
    assert manifest["prng"]["algorithm"] == "PCG64"
    digest = hashlib.sha256((tmp_path / "cs.json").read_bytes()).hexdigest()
    assert manifest["outcome"]["outputs"] == {"cs.json": digest}
    code, out, _ = run(capsys, "replay", "m.json")
    assert code == 0 and "identical" in out


def test_verify_scoped(capsys):
    code, out, _ = run(capsys, "verify", "--module", "charsub", "--p-list", "2", "--sigma0-list", "3")
    assert code == 0
    assert "2825 subspaces" in out
    code, out, _ = run(capsys, "verify", "--trials", "0")
    assert code == 0 and "vacuous" in out


def test_verify_json_goes_to_out_only(tmp_path, capsys):
    rep = tmp_path / "r.json"
    code, out, _ = run(capsys, "verify", "--module", "gf", "--out", str(rep))
    assert code == 0 and not out.lstrip().startswith("{")
    assert json.loads(rep.read_text())["passed"] is True
