"""End-to-end checks of the command-line front end: exit codes,
verdict lines, JSON reports, and determinism."""

import json

import pytest

from tqftwb import __version__
from tqftwb.cli import main


@pytest.fixture
def z2_model(tmp_path):
    path = tmp_path / "z2.json"
    path.write_text(json.dumps({"base": ["p"], "isotropy": {"p": [2]}}))
    return str(path)


@pytest.fixture
def pq_model(tmp_path):
    path = tmp_path / "pq.json"
    path.write_text(json.dumps(
        {"base": ["p", "q"], "isotropy": {"p": [2], "q": [3]}}))
    return str(path)


def test_cob_normalize(capsys):
    assert main(["cob", "normalize", "--term", "mu . delta"]) == 0
    assert capsys.readouterr().out == "1->1: in[1] out[1] g1\n"
    assert main(["cob", "normalize", "--term", "eps . eta"]) == 0
    assert capsys.readouterr().out == "0->0: in[] out[] g0\n"


def test_cob_normalize_rejects_bad_terms(capsys):
    assert main(["cob", "normalize", "--term", "mu . mu"]) == 2
    assert "bad term" in capsys.readouterr().err
    assert main(["cob", "normalize", "--term", "mu . ((("]) == 2
    assert main(["cob", "normalize", "--term", "gamma"]) == 2


def test_tqft_eval_identity_verdict(z2_model, capsys):
    code = main(["tqft", "eval", "--model", z2_model,
                 "--term", "mu . (id(1) * eta)", "--expect", "id"])
    assert code == 0
    assert "fingerprint-equal: id(1)" in capsys.readouterr().out


def test_tqft_eval_detects_mismatch(z2_model, capsys):
    code = main(["tqft", "eval", "--model", z2_model,
                 "--term", "tau", "--expect", "id"])
    assert code == 1
    assert "fingerprint-distinct: id(2)" in capsys.readouterr().out


def test_tqft_eval_genus0(pq_model, capsys):
    code = main(["tqft", "eval", "--model", pq_model,
                 "--term", "delta . mu", "--expect", "genus0"])
    assert code == 0
    assert "fingerprint-equal: genus0(2,2)" in capsys.readouterr().out
    # a handle is not genus zero
    code = main(["tqft", "eval", "--model", pq_model,
                 "--term", "mu . delta", "--expect", "genus0"])
    assert code == 1
    assert "fingerprint-distinct: genus0(1,1)" in capsys.readouterr().out


def test_tqft_eval_usage_errors(z2_model, capsys):
    assert main(["tqft", "eval", "--model", z2_model,
                 "--term", "mu", "--expect", "id"]) == 2
    assert main(["tqft", "eval", "--model", z2_model,
                 "--term", "eps . eta", "--expect", "genus0"]) == 2
    capsys.readouterr()


def test_frobenius_check_passes(z2_model, capsys):
    assert main(["frobenius", "check", "--model", z2_model]) == 0
    out = capsys.readouterr().out
    assert "PASS associativity" in out
    assert "all axioms hold" in out
    assert "FAIL" not in out


def test_model_errors_exit_two(tmp_path, capsys):
    assert main(["frobenius", "check", "--model",
                 str(tmp_path / "missing.json")]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["frobenius", "check", "--model", str(bad)]) == 2
    empty = tmp_path / "empty.json"
    empty.write_text(json.dumps({"base": []}))
    assert main(["frobenius", "check", "--model", str(empty)]) == 2
    factor = tmp_path / "factor.json"
    factor.write_text(json.dumps({"base": ["p"], "isotropy": {"p": [1]}}))
    assert main(["frobenius", "check", "--model", str(factor)]) == 2
    errs = capsys.readouterr().err
    assert "tqftwb:" in errs and "Traceback" not in errs


def test_lie_commands(capsys):
    assert main(["lie", "sl2-semidirect", "--trials", "5"]) == 0
    assert "all checks passed" in capsys.readouterr().out
    assert main(["lie", "sln", "--n", "2", "--trials", "5"]) == 0
    capsys.readouterr()
    assert main(["lie", "sln", "--n", "1"]) == 2
    assert main(["lie", "sl3-centralizer", "--n", "3"]) == 2
    capsys.readouterr()


def test_lie_json_report(tmp_path, capsys):
    out = tmp_path / "report.json"
    assert main(["lie", "sl3-centralizer", "--trials", "5", "--seed", "9",
                 "--json", str(out)]) == 0
    capsys.readouterr()
    data = json.loads(out.read_text())
    assert data["tool"] == "tqftwb"
    assert data["version"] == __version__
    assert data["command"] == "lie sl3-centralizer"
    assert data["options"]["seed"] == 9
    assert data["report"]["all_pass"] is True
    # stable serialization: keys sorted on disk
    assert out.read_text() == json.dumps(data, indent=2, sort_keys=True) + "\n"


def test_reports_are_byte_identical(z2_model, tmp_path, capsys):
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    outputs = []
    for p in paths:
        assert main(["frobenius", "check", "--model", z2_model,
                     "--seed", "3", "--json", str(p)]) == 0
        outputs.append(capsys.readouterr().out)
    assert outputs[0] == outputs[1]
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_seed_falls_back_to_environment(z2_model, tmp_path, capsys,
                                        monkeypatch):
    monkeypatch.setenv("TQFTWB_SEED", "7")
    env_path = tmp_path / "env.json"
    assert main(["frobenius", "check", "--model", z2_model,
                 "--json", str(env_path)]) == 0
    capsys.readouterr()
    assert json.loads(env_path.read_text())["options"]["seed"] == 7
    monkeypatch.setenv("TQFTWB_SEED", "x")
    assert main(["frobenius", "check", "--model", z2_model]) == 2
    capsys.readouterr()


def test_usage_errors_from_argparse(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["lie", "so3"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["cob"])
    assert exc.value.code == 2
    capsys.readouterr()
