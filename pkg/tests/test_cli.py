import json
import os

import pytest

from sosrank.cli import main

DATA = os.path.join(os.path.dirname(__file__), "data")


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_analyze_two_variables(capsys):
    code, out, _ = run(capsys, "--json", "analyze", "x1^2 - x1 x2 + x2^2", "--n", "2", "--min-rank")
    obj = json.loads(out)
    assert code == 0
    assert obj["pattern_feasible"] and obj["min_rank"] == 2 and obj["schema"] == "sosrank.cli/1"


def test_analyze_case1_file(capsys):
    code, out, _ = run(capsys, "analyze", os.path.join(DATA, "case1.txt"), "--json", "--diagram")
    obj = json.loads(out)
    assert code == 0
    assert obj["hilbert"]["g"] == 9 and obj["betti"]["beta"] == 0 and obj["rank_floor"] == 5
    assert obj["signature"] == [6, 3]
    assert obj["diagram"].splitlines()[0] == "P N P P"


def test_analyze_text_output(capsys):
    code, out, _ = run(capsys, "analyze", "x1 - x2", "--n", "3", "--edges")
    assert code == 0
    assert "#(sq) = 4" in out and "x1\tx2" in out


def test_analyze_parse_error(capsys):
    code, _, err = run(capsys, "analyze", "")
    assert code == 2 and "parse error" in err


def test_analyze_budget(capsys):
    text = "x1^2 + x1 x3 + x2^2 - x1 x2"
    code, _, err = run(capsys, "analyze", text, "--min-rank", "--cap", "1")
    assert code == 3 and "budget" in err


def test_unknown_flag_and_missing_subcommand(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["analyze", "x1", "--bogus"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 2


def test_verify_pass_and_render_round_trip(capsys, tmp_path):
    path = tmp_path / "report.json"
    code, out, _ = run(capsys, "verify", "--degree", "2", "--lp", "--out", str(path))
    assert code == 0 and "sweep_sos: PASS" in out and "sweep_lp_theorem: PASS" in out
    code, again, _ = run(capsys, "render", str(path))
    assert code == 0 and again == out


def test_verify_random_reproducible(capsys):
    argv = ["--json", "--seed", "7", "verify", "--degree", "3", "--mode", "random", "--samples", "300"]
    code1, out1, _ = run(capsys, *argv)
    code2, out2, _ = run(capsys, *argv)
    assert code1 == code2 == 0
    assert json.loads(out1)["digests"] == json.loads(out2)["digests"]


def test_verify_ceiling(capsys):
    code, _, err = run(capsys, "verify", "--degree", "9", "--mode", "exhaustive")
    assert code == 2 and "ceiling" in err


def test_verify_incomplete(capsys):
    code, out, _ = run(capsys, "verify", "--degree", "2", "--cap", "0")
    assert code == 3 and "INCOMPLETE" in out


def test_render_rejects_garbage(capsys, tmp_path):
    path = tmp_path / "x.json"
    path.write_text('{"schema": "nope"}')
    code, _, _ = run(capsys, "render", str(path))
    assert code == 2


@pytest.mark.parametrize("d,k", [(1, 2), (3, 3), (5, 4)])
def test_ballmap(capsys, d, k):
    code, out, _ = run(capsys, "--json", "ballmap", "--n", "2", "--d", str(d))
    obj = json.loads(out)
    assert code == 0 and obj["k_min"] == k and obj["degree_bound"]
    if d == 3:
        assert obj["witness_text"].splitlines() == ["+1 x1^3", "+1 x2^3", "+3 x1 x2"]
        assert obj["components"] == ["z1^3", "z2^3", "sqrt(3)*z1*z2"]


def test_ballmap_budget(capsys):
    code, out, _ = run(capsys, "ballmap", "--n", "2", "--d", "5", "--budget", "10")
    assert code == 3 and "unresolved" in out


def test_fixtures(capsys):
    code, out, _ = run(capsys, "fixtures")
    assert code == 0 and "fixture_cases: PASS" in out
