from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.optimize import linprog

from sosrank.combinatorics import MultiIndex, enumerate_multiindices
from sosrank.errors import BudgetExceeded
from sosrank.hermitian import (
    PatternSystem,
    SignedForm,
    SupportPattern,
    check_witness,
    min_rank,
    min_rank_witness,
    multiply_by_s,
    rank,
    realize,
    signature_pair,
    sos_window_verdict,
    squared_norm_feasible,
)
from sosrank.ideal import hilbert
from sosrank.lattice import lattice


def M(*e):
    return MultiIndex(e)


def pattern(n, dm1, A, B):
    return SupportPattern(n, dm1, frozenset(map(MultiIndex, A)), frozenset(map(MultiIndex, B)))


@st.composite
def patterns(draw, n=3, max_dm1=2):
    dm1 = draw(st.integers(1, max_dm1))
    states = draw(st.lists(st.integers(0, 2), min_size=len(lattice(n, dm1).low),
                           max_size=len(lattice(n, dm1).low)))
    a = b = 0
    for i, s in enumerate(states):
        if s == 1:
            a |= 1 << i
        elif s == 2:
            b |= 1 << i
    return SupportPattern.from_masks(n, dm1, a, b)


TWO_VAR = pattern(2, 2, [(2, 0), (0, 2)], [(1, 1)])
THREE_VAR = pattern(3, 2, [(2, 0, 0), (0, 2, 0)], [(1, 1, 0)])


def test_realize_examples():
    q = realize(TWO_VAR, {M(2, 0): 1, M(0, 2): 1, M(1, 1): 1})
    assert q == SignedForm(2, 2, {M(2, 0): 1, M(1, 1): -1, M(0, 2): 1})
    full = pattern(3, 2, enumerate_multiindices(3, 2), [])
    assert signature_pair(realize(full, {a: 1 for a in full.support})) == (6, 0)
    assert realize(pattern(3, 2, [], []), {}).is_zero()
    with pytest.raises(ValueError):
        realize(TWO_VAR, {M(2, 0): 1, M(0, 2): 0, M(1, 1): 1})
    with pytest.raises(ValueError):
        realize(TWO_VAR, {M(2, 0): 1})


def test_multiply_by_s_examples():
    q = SignedForm(2, 2, {M(2, 0): 1, M(1, 1): -1, M(0, 2): 1})
    p = multiply_by_s(q)
    assert p == SignedForm(2, 3, {M(3, 0): 1, M(0, 3): 1})
    assert rank(p) == 2
    p = multiply_by_s(SignedForm(3, 1, {M(1, 0, 0): 1, M(0, 1, 0): -1}))
    assert p == SignedForm(3, 2, {M(2, 0, 0): 1, M(0, 2, 0): -1, M(1, 0, 1): 1, M(0, 1, 1): -1})
    assert rank(p) == 4
    assert multiply_by_s(SignedForm(3, 2, {})).is_zero()
    ones = SignedForm(3, 2, {a: 1 for a in enumerate_multiindices(3, 2)})
    assert rank(multiply_by_s(ones)) == 10
    assert rank(SignedForm(3, 2, {})) == 0


def test_feasibility_examples():
    assert squared_norm_feasible(THREE_VAR) is None
    w = squared_norm_feasible(TWO_VAR)
    assert w is not None and check_witness(TWO_VAR, w)
    ones = realize(TWO_VAR, {M(2, 0): 1, M(0, 2): 1, M(1, 1): 1})
    assert multiply_by_s(ones) == SignedForm(2, 3, {M(3, 0): 1, M(0, 3): 1})
    pos = pattern(3, 2, [(1, 1, 0), (0, 0, 2)], [])
    w = squared_norm_feasible(pos)
    assert w is not None and set(w.magnitudes.values()) == {1}
    assert squared_norm_feasible(pattern(3, 1, [], [(1, 0, 0)])) is None


def test_min_rank_examples():
    assert min_rank(TWO_VAR) == 2
    assert min_rank(pattern(3, 2, [(1, 1, 0)], [])) == 3
    assert min_rank(THREE_VAR) is None
    assert min_rank(pattern(3, 2, [], [])) == 0


def test_window_verdicts():
    assert sos_window_verdict(3, 4).label == "VIOLATION"
    assert sos_window_verdict(3, 4).gap == (4, 4)
    assert sos_window_verdict(3, 5).consistent
    assert sos_window_verdict(3, 3).consistent and sos_window_verdict(3, 0).consistent
    assert not sos_window_verdict(3, 1).consistent and not sos_window_verdict(3, 2).consistent
    assert sos_window_verdict(2, 1).label == "VIOLATION"
    assert sos_window_verdict(2, 2).consistent


def test_signature_examples():
    assert signature_pair(SignedForm(2, 2, {M(2, 0): 1, M(1, 1): -1, M(0, 2): 1})) == (2, 1)
    assert signature_pair(SignedForm(3, 2, {})) == (0, 0)


def test_budget_cap():
    full = pattern(3, 2, [(2, 0, 0), (0, 2, 0), (0, 0, 2)], [(1, 1, 0), (1, 0, 1), (0, 1, 1)])
    with pytest.raises(BudgetExceeded):
        min_rank(full, squared_norm=False, cap=1)


def _scipy_max_zero_set(system, nonneg):
    """Largest vanishing set of ambiguous rows, by brute force with a float LP."""
    m = len(system.rows)
    var_ids = sorted({i for row in system.rows for i, _ in row})
    col = {i: j for j, i in enumerate(var_ids)}

    def feasible(Z):
        A_eq, b_eq, A_ub, b_ub = [], [], [], []
        for r, row in enumerate(system.rows):
            vec = [0.0] * len(var_ids)
            const = 0
            for i, s in row:
                vec[col[i]] += s
                const += s
            if r in Z:
                A_eq.append(vec)
                b_eq.append(-const)
            elif nonneg:
                A_ub.append([-v for v in vec])
                b_ub.append(const)
        if not var_ids:
            return all(b == 0 for b in b_eq) and all(b >= 0 for b in b_ub)
        res = linprog([0] * len(var_ids), A_ub=A_ub or None, b_ub=b_ub or None,
                      A_eq=A_eq or None, b_eq=b_eq or None, bounds=[(0, None)] * len(var_ids),
                      method="highs")
        return res.status == 0

    if not feasible(set()):
        return None
    for size in range(m, 0, -1):
        if any(feasible(set(Z)) for Z in combinations(range(m), size)):
            return size
    return 0


@given(patterns())
def test_min_rank_matches_bruteforce_oracle(pat):
    system = PatternSystem.of(pat)
    for squared_norm in (True, False):
        ours = min_rank(pat, squared_norm=squared_norm)
        if squared_norm and (not system.containment or (pat.B_set and not pat.A_set)):
            assert ours is None
            continue
        best = _scipy_max_zero_set(system, squared_norm)
        expected = None if best is None else system.forced + len(system.rows) - best
        assert ours == expected


@given(patterns(max_dm1=3))
def test_enumeration_orders_agree(pat):
    for squared_norm in (True, False):
        a = min_rank(pat, squared_norm=squared_norm, order="descending")
        b = min_rank(pat, squared_norm=squared_norm, order="ascending")
        assert a == b


@given(patterns())
def test_feasibility_characterisation(pat):
    w = squared_norm_feasible(pat)
    rho = min_rank(pat)
    assert (w is not None) == (rho is not None)
    if w is not None:
        assert check_witness(pat, w)
        I_f, I_g, I_fg = pat.ideals()
        d = pat.d
        hf = hilbert(I_f, d) if pat.A_set else 0
        hg = hilbert(I_g, d) if pat.B_set else 0
        hfg = hilbert(I_fg, d) if pat.support else 0
        assert hf == hfg
        assert rho >= hfg - hg
        if pat.B_set:
            assert len(pat.A_set) >= pat.n


@given(patterns(), st.integers(1, 9), st.integers(1, 9))
def test_scaling_invariance(pat, num, den):
    rho, q = min_rank_witness(pat, squared_norm=False)
    scaled = q.scaled(Fraction(num, den))
    assert rank(multiply_by_s(scaled)) == rank(multiply_by_s(q)) == rho
    w = squared_norm_feasible(pat)
    if w is not None:
        mags = {k: v * Fraction(num, den) for k, v in w.magnitudes.items()}
        p = multiply_by_s(realize(pat, mags))
        assert all(v > 0 for v in p.coefficients.values())


@given(patterns(n=2, max_dm1=4))
def test_two_variable_patterns_respect_windows(pat):
    rho = min_rank(pat)
    if rho is not None:
        assert sos_window_verdict(2, rho).consistent
