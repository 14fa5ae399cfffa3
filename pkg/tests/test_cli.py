"""Command-line surface: flags, exit codes, JSON stability."""
import json

import pytest

from seprkit.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def matrix_file(tmp_path):
    p = tmp_path / "m.txt"
    p.write_text("0 1 0\n1 0 1\n1 0 0\n")
    return str(p)


@pytest.fixture
def pattern_file(tmp_path):
    p = tmp_path / "p.txt"
    p.write_text("++00\n0-+0\n+0++\n00-0\n")
    return str(p)


def test_sepr_command(capsys, matrix_file):
    code, out, _ = run(capsys, "sepr", "--matrix", matrix_file)
    assert code == 0 and out.strip() == "NS-A+"


def test_combine_command(capsys):
    code, out, _ = run(capsys, "combine", "S+N", "A+S+A-")
    assert code == 0 and out.strip() == "S+S+S*S-N"


def test_check_unique_command(capsys, pattern_file):
    code, out, _ = run(capsys, "check-unique", "--pattern", pattern_file)
    assert code == 0 and out.strip() == "unique: S*S*S*A-"


def test_det_command(capsys, tmp_path):
    p = tmp_path / "p.txt"
    p.write_text("++\n+-\n")
    code, out, _ = run(capsys, "det", "--pattern", str(p))
    assert code == 0 and out.strip() == "-"
    p.write_text("++\n--\n")
    code, out, _ = run(capsys, "det", "--pattern", str(p))
    assert code == 0 and out.strip() == "ambiguous"


def test_semistable_exit_codes(capsys, tmp_path):
    p = tmp_path / "p.txt"
    p.write_text("0-\n+0\n")
    code, out, _ = run(capsys, "semistable", "--pattern", str(p))
    assert code == 0 and out.strip() == "yes"
    p.write_text("0+\n+0\n")
    code, out, _ = run(capsys, "semistable", "--pattern", str(p))
    assert code == 1 and out.startswith("no:")


def test_stable_command(capsys, tmp_path):
    p = tmp_path / "p.txt"
    p.write_text("-+000\n-0+00\n0-0+0\n00-0+\n000-0\n")
    code, out, _ = run(capsys, "stable", "--pattern", str(p))
    assert code == 0 and out.strip() == "yes"
    p.write_text("0+\n00\n")  # reducible: usage error
    code, out, err = run(capsys, "stable", "--pattern", str(p))
    assert code == 2 and "reducible" in err


def test_simplify_command(capsys, tmp_path):
    p = tmp_path / "p.txt"
    p.write_text("0++\n-0+\n000\n")
    code, out, _ = run(capsys, "simplify", "--pattern", str(p))
    assert code == 0 and out.strip() == "0+0\n-00\n000"


def test_predict_command(capsys, tmp_path):
    p = tmp_path / "p.txt"
    p.write_text("0+0\n00+\n+00\n")
    code, out, _ = run(capsys, "predict", "--pattern", str(p))
    assert code == 0 and "NNA+" in out


def test_family_command(capsys):
    code, out, _ = run(capsys, "family", "star", "3", "--loops", "center")
    assert code == 0 and out.strip() == "-++\n-00\n-00"


def test_enumerate_command(capsys):
    code, out, _ = run(capsys, "enumerate", "--order", "2",
                       "--constraints", "symmetric,nonnegative", "--count-only")
    assert code == 0 and out.strip() == "8"


def test_seprset_json_deterministic(capsys, tmp_path):
    p = tmp_path / "p.txt"
    p.write_text("++0\n--+\n0+0\n")
    outs = []
    for _ in range(2):
        code, out, _ = run(capsys, "seprset", "--pattern", str(p),
                           "--seed", "3", "--json")
        assert code == 0
        outs.append(out)
    assert outs[0] == outs[1]
    payload = json.loads(outs[0])
    assert sorted(payload["lower"]) == ["S*S*A-", "S*S-A-"]
    assert payload["tight"] is True


def test_text_and_json_verdicts_agree(capsys, pattern_file):
    _, text_out, _ = run(capsys, "check-unique", "--pattern", pattern_file)
    _, json_out, _ = run(capsys, "check-unique", "--pattern", pattern_file, "--json")
    payload = json.loads(json_out)
    assert payload["sequence"] == text_out.strip().removeprefix("unique: ")


def test_stdin_input(capsys, monkeypatch):
    import io

    monkeypatch.setattr("sys.stdin", io.StringIO("0+\n-0\n"))
    code, out, _ = run(capsys, "det", "--pattern", "-")
    assert code == 0 and out.strip() == "+"


def test_usage_errors(capsys, tmp_path):
    code, _, err = run(capsys, "sepr", "--matrix", str(tmp_path / "missing.txt"))
    assert code == 2 and "error" in err
    p = tmp_path / "bad.txt"
    p.write_text("0x\n-0\n")
    code, _, err = run(capsys, "det", "--pattern", str(p))
    assert code == 2 and "bad pattern" in err
    code, _, _ = run(capsys, "combine", "S?", "N")
    assert code == 2
    assert main(["not-a-command"]) == 2


def test_check_sequence_command(capsys):
    code, out, _ = run(capsys, "check-sequence", "S+NA+")
    assert code == 0 and "not attainable" in out


def test_bad_grid(capsys, tmp_path):
    p = tmp_path / "p.txt"
    p.write_text("0+\n-0\n")
    code, _, err = run(capsys, "seprset", "--pattern", str(p), "--grid", "0,1")
    assert code == 2 and "grid" in err


def test_verify_paper_rendering(capsys, monkeypatch):
    from seprkit.enumeration import VerificationReport

    reports = [
        VerificationReport("alpha", "pass", "fine", {"n": 1}, None, 0.1),
        VerificationReport("beta", "fail", "1 failure(s)", {}, {"bad": True}, 0.2),
    ]
    monkeypatch.setattr("seprkit.cli.run_all_verifications",
                        lambda **kw: reports)
    code, out, _ = run(capsys, "verify-paper")
    assert code == 1
    assert "alpha" in out and "FAIL" in out and "1/2 checks passed" in out
    code, out, _ = run(capsys, "verify-paper", "--json")
    assert code == 1
    payload = json.loads(out)
    assert [r["check"] for r in payload] == ["alpha", "beta"]
