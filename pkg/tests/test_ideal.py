import random
from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sosrank.combinatorics import MultiIndex, binomial, enumerate_multiindices
from sosrank.exact import exact_rank
from sosrank.ideal import (
    KoszulRelation,
    MonomialIdeal,
    beta_1_d,
    graded_containment,
    graded_piece,
    hilbert,
    hilbert_quotient,
    koszul_matrix,
    koszul_rank,
    koszul_relations,
    macaulay_bound_check,
)

CASE1 = MonomialIdeal(3, 3, ((2, 1, 0), (1, 0, 2), (0, 2, 1)))
CASE3 = MonomialIdeal(3, 3, ((2, 1, 0), (2, 0, 1), (0, 2, 1)))
CASE4 = MonomialIdeal(3, 3, ((2, 1, 0), (1, 1, 1), (1, 0, 2)))


@st.composite
def ideals(draw, n=3, max_dm1=5):
    dm1 = draw(st.integers(1, max_dm1))
    monos = enumerate_multiindices(n, dm1)
    gens = draw(st.lists(st.sampled_from(monos), min_size=1, max_size=len(monos), unique=True))
    return MonomialIdeal(n, dm1, tuple(gens))


def test_graded_piece_examples():
    piece = graded_piece(CASE1, 4)
    assert len(piece) == 9
    listed = {(3, 1, 0), (2, 2, 0), (2, 0, 2), (1, 0, 3), (0, 3, 1), (0, 2, 2)}
    assert listed <= piece
    assert graded_piece(CASE1, 2) == frozenset()
    assert len(graded_piece(CASE3, 4)) == 8


def test_hilbert_examples():
    assert hilbert(CASE1, 4) == 9
    assert hilbert(CASE4, 4) == 7
    assert hilbert(MonomialIdeal.full(3, 2), 3) == 10
    assert hilbert_quotient(CASE1, 4) == 6
    assert hilbert_quotient(MonomialIdeal(3, 2), 5) == binomial(7, 5)
    assert hilbert_quotient(MonomialIdeal.full(3, 2), 3) == 0


def test_koszul_relation_examples():
    assert [r for r in koszul_relations(CASE1, 4) if r.degree == 4] == []
    pair = MonomialIdeal(3, 3, ((2, 1, 0), (2, 0, 1)))
    (rel,) = koszul_relations(pair, 4)
    assert rel.degree == 4
    assert rel.multipliers == ((0, 0, 1), (0, 1, 0))


@pytest.mark.parametrize("d", [2, 3, 4, 5, 6])
def test_full_ideal_relations_and_beta(d):
    full = MonomialIdeal.full(3, d - 1)
    rels = [r for r in koszul_relations(full, d) if r.degree == d]
    assert len(rels) == 3 * (d * d - d) // 2
    assert beta_1_d(full) == d * d - 1 == koszul_rank(full)
    # interior triples contribute two independent relations each, edges one
    assert 2 * binomial(d - 1, 2) + 3 * (d - 1) == d * d - 1


def test_beta_examples():
    assert beta_1_d(CASE1) == 0
    assert beta_1_d(CASE3) == 1


def test_containment_examples():
    forced = MonomialIdeal(3, 3, ((3, 0, 0), (2, 0, 1), (1, 2, 0), (0, 3, 0), (0, 1, 2), (0, 0, 3)))
    assert graded_containment(forced, CASE1, 4)
    A = MonomialIdeal(3, 2, ((2, 0, 0), (0, 2, 0)))
    B = MonomialIdeal(3, 2, ((1, 1, 0),))
    assert not graded_containment(A, B, 3)
    assert graded_containment(A, MonomialIdeal(3, 2), 3)


def test_ideal_validation():
    with pytest.raises(ValueError):
        MonomialIdeal(3, 2, ((1, 1, 0), (1, 1, 0)))
    with pytest.raises(ValueError):
        MonomialIdeal(3, 2, ((1, 1, 1),))
    with pytest.raises(ValueError):
        MonomialIdeal(3, 2, ((1, 1),))
    assert len(MonomialIdeal.of(3, 2, [(1, 1, 0), (1, 1, 0)])) == 1


@given(ideals())
def test_betti_hilbert_consistency(I):
    d = I.gen_degree + 1
    assert hilbert(I, d) == I.n * len(I) - koszul_rank(I)
    assert beta_1_d(I) == koszul_rank(I)
    assert hilbert(I, d) <= I.n * len(I)
    assert (hilbert(I, d) == I.n * len(I)) == (beta_1_d(I) == 0)


@given(ideals())
def test_macaulay_bound_holds(I):
    for ell in range(1, I.gen_degree + 3):
        assert macaulay_bound_check(I, ell)


@given(ideals(), st.permutations([0, 1, 2]))
def test_hilbert_invariant_under_permutation(I, perm):
    J = I.permuted(perm)
    for ell in range(I.gen_degree, I.gen_degree + 3):
        assert hilbert(I, ell) == hilbert(J, ell)


def _sigma_rank(rels):
    gens = sorted({g for r in rels for g in (r.a, r.b)})
    I = MonomialIdeal(3, gens[0].degree(), tuple(gens))
    return exact_rank(koszul_matrix(I, rels))


@pytest.mark.parametrize("d", [3, 4, 5, 6])
def test_dependent_sets(d):
    for A in enumerate_multiindices(3, d):
        if min(A) == 0:
            continue
        below = [A.sub_unit(k) for k in range(3)]
        rels = [KoszulRelation(u, v) for u, v in combinations(below, 2)]
        assert all(r.degree == d for r in rels)
        assert _sigma_rank(rels) == 2
        for pair in combinations(rels, 2):
            assert _sigma_rank(list(pair)) == 2


def test_random_ideals_macaulay_sweep():
    rng = random.Random(11)
    for _ in range(1000):
        dm1 = rng.randint(1, 5)
        monos = enumerate_multiindices(3, dm1)
        gens = rng.sample(monos, rng.randint(1, len(monos)))
        I = MonomialIdeal(3, dm1, tuple(gens))
        assert all(macaulay_bound_check(I, ell) for ell in range(1, dm1 + 3))
