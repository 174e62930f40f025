import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sosrank.ballmaps import (
    ClassPCandidate,
    degree_bound_check,
    divide_by_s,
    evaluate,
    homogeneous_rank_bound,
    homogenize_flip,
    is_class_P,
    map_components,
    proper_map_search,
)
from sosrank.combinatorics import MultiIndex
from sosrank.errors import NegativeCoefficient, NotInClassP
from sosrank.hermitian import SignedForm, multiply_by_s
from sosrank.newton import build_graph, connected_components, lp_theorem_check


def poly(terms):
    return {MultiIndex(k): Fraction(v) for k, v in terms.items()}


LINEAR = poly({(1, 0): 1, (0, 1): 1})
SQUARE = poly({(2, 0): 1, (1, 1): 2, (0, 2): 1})
CUBIC = poly({(3, 0): 1, (1, 1): 3, (0, 3): 1})


def random_class_p(rng, n, steps):
    """Start from x_1 + ... + x_n and repeatedly replace part of a term c x^a
    by c x^a (x_1 + ... + x_n); each step stays in the class."""
    p = {MultiIndex(tuple(int(i == j) for i in range(n))): Fraction(1) for j in range(n)}
    for _ in range(steps):
        a = rng.choice(sorted(p))
        t = Fraction(rng.randint(1, 4), 4)
        c = p[a] * t
        p[a] -= c
        if not p[a]:
            del p[a]
        for j in range(n):
            b = a.add_unit(j)
            p[b] = p.get(b, Fraction(0)) + c
    return p


def test_membership_examples():
    assert is_class_P(LINEAR)
    assert is_class_P(SQUARE) and len(SQUARE) == 3 and degree_bound_check(2, 2, 3)
    assert is_class_P(CUBIC) and len(CUBIC) == 3
    assert degree_bound_check(2, 3, 3) and 3 == 2 * 3 - 3
    assert not is_class_P(poly({(2, 0): 1, (0, 1): 1}))
    with pytest.raises(NegativeCoefficient):
        is_class_P(poly({(1, 0): 2, (0, 1): -1}))


def test_candidate_flag():
    cand = ClassPCandidate(2, CUBIC)
    assert not cand.member
    assert cand.verify().member and cand.k == 3 and cand.degree == 3


def test_flip_examples():
    r = homogenize_flip(LINEAR)
    assert r.p == SignedForm(3, 1, {MultiIndex((1, 0, 0)): 1, MultiIndex((0, 1, 0)): 1, MultiIndex((0, 0, 1)): 1})
    assert r.q == SignedForm(3, 0, {MultiIndex((0, 0, 0)): 1})
    assert r.rho == 3 == Fraction(1 + 5, 2)
    r = homogenize_flip(CUBIC)
    assert r.p.degree == 3 and r.rho == 4 == Fraction(3 + 5, 2)
    assert multiply_by_s(r.q) == r.p
    # the computed x3^3 coefficient is +1 = -(-1)^3
    assert r.top_coefficient == 1
    with pytest.raises(NotInClassP):
        homogenize_flip(poly({(2, 0): 1, (0, 1): 1}))


def test_divide_by_s_rejects_remainder():
    with pytest.raises(NotInClassP):
        divide_by_s(SignedForm(3, 2, {MultiIndex((2, 0, 0)): 1}))


def test_degree_bound_examples():
    assert degree_bound_check(2, 3, 3)
    assert not degree_bound_check(2, 4, 3)
    assert degree_bound_check(3, 2, 5)
    assert homogeneous_rank_bound(2, 3) == 4
    assert homogeneous_rank_bound(3, 2) == 6


def test_random_class_p_fixtures_round_trip():
    rng = random.Random(5)
    for i in range(100):
        n = rng.choice([2, 2, 3])
        p = random_class_p(rng, n, rng.randint(0, 6))
        assert is_class_P(p, n)
        r = homogenize_flip(p, n)
        # p(x, -1) = p~(x) - 1 at random rational points
        for _ in range(3):
            x = [Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(n)]
            assert evaluate(r.p.coefficients, x + [-1]) == evaluate(p, x) - 1
        assert multiply_by_s(r.q) == r.p
        # flipping x_{n+1} twice is the identity on coefficients
        flip = lambda f: {a: c * (-1) ** a[-1] for a, c in f.items()}
        assert flip(flip(r.p.coefficients)) == r.p.coefficients
        d = r.p.degree
        # constant term c0 of p~ - 1 homogenises to (c0 - 1) x_{n+1}^d, then flips
        assert r.top_coefficient == (p.get(MultiIndex([0] * n), 0) - 1) * (-1) ** d
        if n == 2:
            assert degree_bound_check(2, d, len(p))
            assert r.rho >= homogeneous_rank_bound(2, d)
            if len(connected_components(build_graph(r.q))) == 1:
                assert lp_theorem_check(r.q).holds


@pytest.mark.parametrize("d,k", [(1, 2), (2, 3), (3, 3), (4, 4), (5, 4)])
def test_search_small(d, k):
    res = proper_map_search(2, d)
    assert res.resolved and res.k_min == k and res.lower_bound == k
    assert res.witness.member and res.witness.k == k and res.witness.degree == d
    assert degree_bound_check(2, d, k)


def test_search_cubic_witness():
    res = proper_map_search(2, 3)
    assert res.witness.coefficients == CUBIC
    assert map_components(res.witness) == ["z1^3", "z2^3", "sqrt(3)*z1*z2"]
    assert proper_map_search(2, 1).witness.coefficients == LINEAR


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_pruning_agrees_with_unpruned_search(d):
    a = proper_map_search(2, d, prune=True)
    b = proper_map_search(2, d, prune=False)
    assert (a.k_min, a.witness.coefficients) == (b.k_min, b.witness.coefficients)
    assert a.solves <= b.solves


def test_search_three_variables_degree_two():
    res = proper_map_search(3, 2)
    assert res.resolved and res.witness.member
    assert degree_bound_check(3, 2, res.k_min)


def test_search_budget_reports_unresolved():
    res = proper_map_search(2, 5, budget=50)
    assert not res.resolved and res.k_min is None and res.lower_bound <= 4


@given(st.integers(1, 9))
def test_scaling_breaks_membership(num):
    p = {a: c * Fraction(num, 2) for a, c in CUBIC.items()}
    assert is_class_P(p) == (num == 2)
