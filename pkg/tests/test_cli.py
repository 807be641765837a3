import json
import subprocess
import sys

import pytest

from chowlab.cli import main


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_chow_poly(capsys):
    assert run(["chow-poly", "--boolean", "3"], capsys)[:2] == (0, "1 + 4x + x^2\n")


def test_aug_and_formats(capsys):
    code, out, _ = run(["aug-chow-poly", "--uniform", "2", "4", "--format", "json"], capsys)
    assert code == 0 and json.loads(out)["augmented_chow"] == [1, 5, 1]
    code, out, _ = run(["chow-poly", "--boolean", "2", "--format", "csv"], capsys)
    assert out.splitlines() == ["degree,coefficient", "0,1", "1,1"]


def test_euler(capsys):
    code, out, _ = run(["euler", "--max", "2"], capsys)
    assert code == 0 and out.splitlines() == ["A_1 = 1", "A_2 = 1 + x"]


def test_verify_euler_exit_zero(capsys):
    code, out, _ = run(["verify", "--suite", "euler"], capsys)
    assert code == 0 and out.strip().endswith("0 failed")


def test_output_is_deterministic(capsys):
    a = run(["verify", "--suite", "thm2", "--format", "json", "--max-rank", "4"], capsys)
    b = run(["verify", "--suite", "thm2", "--format", "json", "--max-rank", "4"], capsys)
    assert a == b and a[0] == 0


def test_matroid_input(capsys, tmp_path):
    path = tmp_path / "m.json"
    path.write_text(json.dumps({"ground": 3, "kind": "explicit",
                                "flats": [[], [0], [1], [2], [0, 1, 2]]}))
    code, out, _ = run(["matroid", "info", str(path), "--format", "json"], capsys)
    assert code == 0 and json.loads(out)["flats_by_rank"] == [1, 3, 1]
    code, out, _ = run(["kls", '{"ground": 4, "kind": "uniform", "r": 3}'], capsys)
    assert code == 0 and out.splitlines()[0] == "right: 1 + 2x"


def test_bad_input_exit_two(capsys, tmp_path):
    code, _, err = run(["chow-poly", '{"ground":2,"kind":"explicit","flats":[[],[0],[0,1]]}'], capsys)
    assert code == 2 and "axiom 3" in err
    assert run(["chow-poly", str(tmp_path / "missing.json")], capsys)[0] == 2
    assert run(["chow-poly", "{not json"], capsys)[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["chow-poly"])
    assert exc.value.code == 2


def test_failing_verification_exit_one(capsys, monkeypatch):
    from chowlab import verify
    monkeypatch.setattr(verify, "check_euler_recursion",
                        lambda n, m: verify.VerificationReport("x", "y", 1, 2, False))
    assert run(["verify", "--suite", "euler"], capsys)[0] == 1


def test_ring_command(capsys):
    code, out, _ = run(["ring", "--boolean", "2", "--kind", "augmented", "--format", "json"], capsys)
    assert json.loads(out)["hilbert"] == {"0": 1, "1": 3, "2": 1}


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "chowlab", "chow-poly", "--uniform", "3", "4"],
                         capture_output=True, text=True, check=True)
    assert out.stdout == "1 + 7x + x^2\n"
