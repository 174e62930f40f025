import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sosrank.lattice import lattice
from sosrank.hermitian import PatternSystem
from sosrank.verify import (
    ConfigError,
    SweepConfig,
    VerificationReport,
    _full_lp_feasible,
    analyse_negative_set,
    decode,
    encode,
    fixture_cases,
    render_report,
    sweep_lp_theorem,
    sweep_propositions,
    sweep_sos,
    sweep_squared_norm,
)
from sosrank.formats import parse_monomial


@given(st.integers(1, 4), st.data())
def test_encode_decode_round_trip(dm1, data):
    m = len(lattice(3, dm1).low)
    idx = data.draw(st.integers(0, 3 ** m - 1))
    a, b = decode(idx, m)
    assert a & b == 0
    assert encode(a, b, m) == idx


def test_config_validation():
    with pytest.raises(ConfigError):
        SweepConfig(9)
    with pytest.raises(ConfigError):
        SweepConfig(4, mode="random")
    with pytest.raises(ConfigError):
        SweepConfig(2, n=4)
    assert SweepConfig(4).pattern_space == 3 ** 15
    assert SweepConfig(9, mode="random", samples=10).positions == 10


def test_random_indices_reproducible():
    a = SweepConfig(4, mode="random", samples=50, seed=3)
    b = SweepConfig(4, mode="random", samples=50, seed=3)
    c = SweepConfig(4, mode="random", samples=50, seed=4)
    assert [a.index_at(i) for i in range(50)] == [b.index_at(i) for i in range(50)]
    assert [a.index_at(i) for i in range(50)] != [c.index_at(i) for i in range(50)]


def test_sos_sweep_degree_two():
    rep = sweep_sos(SweepConfig(2))
    assert rep.status == "PASS" and rep.examined == 729 and not rep.violations
    n0 = set()
    for key, row in rep.histograms.items():
        P, N = map(int, key.split(","))
        ranks = {int(r) for r in row}
        if N == 0:
            n0 |= ranks
        else:
            assert min(ranks) >= 5
    assert not n0 & {1, 2, 4}


def test_propositions_degree_two():
    rep = sweep_propositions(SweepConfig(2))
    assert rep.status == "PASS"
    for key, row in rep.histograms.items():
        P, N = map(int, key.split(","))
        if N == 1:
            assert min(int(r) for r in row) >= 5


def test_prefilter_sound_on_every_pattern():
    # the sweep audits 1%; here every pre-filtered pattern at d-1=2 is checked
    lat = lattice(3, 2)
    m = len(lat.low)
    skipped = 0
    for idx in range(3 ** m):
        a, b = decode(idx, m)
        system = PatternSystem(3, 2, a, b)
        if (b and not a) or not system.containment:
            skipped += 1
            assert not _full_lp_feasible(2, a, b)
    assert skipped > 0


def test_determinism_and_worker_independence():
    cfg = SweepConfig(3, mode="random", samples=600, seed=11)
    one = sweep_squared_norm(cfg)
    two = sweep_squared_norm(SweepConfig(3, mode="random", samples=600, seed=11, workers=2))
    assert [r.digest() for r in one] == [r.digest() for r in two]
    assert sweep_lp_theorem(cfg).digest() == sweep_lp_theorem(cfg).digest()


def test_report_json_round_trip():
    rep = sweep_sos(SweepConfig(2))
    obj = json.loads(json.dumps(rep.to_dict()))
    again = VerificationReport.from_dict(obj)
    assert again.render() == rep.render() == render_report(obj)
    assert again.digest() == rep.digest()
    with pytest.raises(ValueError):
        VerificationReport.from_dict({**obj, "schema": "other"})


def test_status_and_exit_codes():
    rep = VerificationReport("demo")
    assert rep.status == "PASS" and rep.exit_code == 0
    rep.incomplete += 1
    assert rep.status == "INCOMPLETE" and rep.exit_code == 3
    rep.check("always fails", False, {"why": "demo"})
    assert rep.status == "FAIL" and rep.exit_code == 1
    assert rep.violations == [{"check": "always fails", "why": "demo"}]


def test_budget_gives_incomplete():
    rep = sweep_sos(SweepConfig(2, ambiguous_cap=0))
    assert rep.status == "INCOMPLETE" and rep.incomplete > 0


def test_lp_sweep_degree_two():
    rep = sweep_lp_theorem(SweepConfig(2))
    assert rep.status == "PASS" and rep.feasible == 528


def test_fixture_cases_pass():
    rep = fixture_cases()
    assert rep.status == "PASS"
    cases = {c["case"]: c["variants"] for c in rep.details["cases"]}
    assert [len(cases[k]) for k in range(1, 6)] == [2, 2, 6, 6, 3]
    assert rep.details["excluded"]["blocked"] == ["x1^2 x2 x3"]


def test_case_analysis_values():
    mono = lambda t: parse_monomial(t, 3)
    case5 = analyse_negative_set([mono("x1^2 x2"), mono("x1 x2 x3"), mono("x2 x3^2")])
    assert case5.floor == 14 - 7
    case3 = analyse_negative_set([mono("x1^2 x2"), mono("x1^2 x3"), mono("x2^2 x3")])
    assert case3.hilbert == 8 and mono("x1 x2 x3") in case3.forced
