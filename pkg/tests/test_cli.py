import json
import subprocess
import sys
from pathlib import Path

from zeq.cli import main

CORPUS = Path(__file__).resolve().parents[1] / "src" / "zeq" / "data" / "corpus.json"


def run_cli(*args):
    proc = subprocess.run(
        [sys.executable, "-m", "zeq", *args],
        capture_output=True, text=True, timeout=600,
    )
    return proc.returncode, proc.stdout, proc.stderr


def test_musq_json(capsys):
    code = main(["musq", "z^2 - x*y", "--seed", "1"])
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["mu_seq"] == [2, 2, 1, 2]
    assert payload["smooth"] is False
    assert payload["coord_change"]["seed"] == 1


def test_musq_smooth(capsys):
    code = main(["musq", "z"])
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["mu_seq"] == [1, 0, 1, 0]
    assert payload["smooth"] is True


def test_check_family_modes(capsys):
    code = main(["check-family", "z^2 - x*y - t*x^2", "--params", "t", "--mode", "ze"])
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["decision"] == "yes"

    code = main(["check-family", "z^2 - x*y - t*x", "--params", "t", "--mode", "harness"])
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["consistent"] is True and payload["decision"] == "no"


def test_curve_milnor(capsys):
    code = main(["curve-milnor", "y^2 - x^3"])
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["milnor"] == 2 and payload["identity_holds"] is True


def test_input_error_exit_code(capsys):
    assert main(["musq", "z^2 - w"]) == 2
    assert main(["check-family", "z^2 - x*y", "--params", "", "--mode", "ze"]) == 2
    assert main(["musq", "x *"]) == 2


def test_trials_exhausted_exit_code(capsys):
    # with a single trial only the identity is tested, which fails the
    # transversality conditions for the raw double point
    assert main(["musq", "z^2 - x*y", "--max-trials", "1"]) == 3


def test_corpus_negative_control(tmp_path, capsys):
    bad = [{
        "name": "wrong-a1",
        "expression": "z^2 - x*y",
        "params": [],
        "tags": [],
        "expected_mu_seq": {"value": [9, 9, 9, 9], "provenance": "trivial"},
    }]
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(bad))
    assert main(["corpus", str(path)]) == 1
    out = capsys.readouterr().out
    assert "FAIL" in out


def test_corpus_empty(tmp_path, capsys):
    path = tmp_path / "empty.json"
    path.write_text("[]")
    assert main(["corpus", str(path)]) == 0


def test_corpus_entry_without_expectation_rejected(tmp_path):
    path = tmp_path / "bare.json"
    path.write_text(json.dumps([{"name": "n", "expression": "z", "params": []}]))
    assert main(["corpus", str(path)]) == 2


def test_determinism_byte_identical():
    code1, out1, _ = run_cli("musq", "z^2 - x*y^2", "--seed", "7")
    code2, out2, _ = run_cli("musq", "z^2 - x*y^2", "--seed", "7")
    assert code1 == code2 == 0
    assert out1 == out2
    code3, out3, _ = run_cli("check-family", "z^2 - x*y - t*x^2",
                             "--params", "t", "--mode", "nustar", "--seed", "3")
    code4, out4, _ = run_cli("check-family", "z^2 - x*y - t*x^2",
                             "--params", "t", "--mode", "nustar", "--seed", "3")
    assert code3 == code4 == 0
    assert out3 == out4


def test_precision_override_exhaustion_exit_code():
    # a truncation ceiling of 2 cannot decide the pencil condition for a
    # germ whose tilted kernel needs the series route
    import zeq.weier as weier
    try:
        assert main(["musq", "z^2 + x^3 + y^4", "--max-precision", "2"]) == 3
    finally:
        weier.MAX_PRECISION_OVERRIDE = None
