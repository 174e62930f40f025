"""Monomial ideals generated in a single degree.

Graded pieces are computed by explicit shift-and-dedupe; the degree-d Betti
number is taken from the counting identity ``H_I(d) = n*beta_0 - beta_1``,
with the rank of the divided Koszul relation matrix available as an
independent check (:func:`koszul_rank`).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .combinatorics import (
    MultiIndex,
    enumerate_multiindices,
    gcd_index,
    lcm_index,
    macaulay_growth,
    monomial_count,
)
from .exact import exact_rank


def canonical_key(a) -> tuple:
    """Sort key realising the graded-lex order (x1 > x2 > ...), largest first."""
    return (-sum(a), tuple(-e for e in a))


@dataclass(frozen=True)
class MonomialIdeal:
    n: int
    gen_degree: int
    generators: tuple[MultiIndex, ...] = field(default=())

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be positive")
        if self.gen_degree < 0:
            raise ValueError("generator degree must be nonnegative")
        gens = [MultiIndex(g) for g in self.generators]
        seen = set()
        for g in gens:
            if len(g) != self.n:
                raise ValueError(f"generator {tuple(g)} has length {len(g)}, expected {self.n}")
            if g.degree() != self.gen_degree:
                raise ValueError(f"generator {tuple(g)} is not of degree {self.gen_degree}")
            if g in seen:
                raise ValueError(f"duplicate generator {tuple(g)}")
            seen.add(g)
        object.__setattr__(self, "generators", tuple(sorted(gens, key=canonical_key)))

    @classmethod
    def of(cls, n: int, gen_degree: int, generators: Iterable) -> "MonomialIdeal":
        """Build an ideal, silently dropping repeated generators."""
        return cls(n, gen_degree, tuple(dict.fromkeys(MultiIndex(g) for g in generators)))

    @classmethod
    def full(cls, n: int, gen_degree: int) -> "MonomialIdeal":
        return cls(n, gen_degree, enumerate_multiindices(n, gen_degree))

    def __len__(self):
        return len(self.generators)

    def permuted(self, perm) -> "MonomialIdeal":
        """Apply the variable permutation ``x_i -> x_perm[i]`` (0-based)."""
        gens = []
        for g in self.generators:
            exps = [0] * self.n
            for i, e in enumerate(g):
                exps[perm[i]] = e
            gens.append(MultiIndex(exps))
        return MonomialIdeal(self.n, self.gen_degree, tuple(gens))


def graded_piece(I: MonomialIdeal, degree: int) -> frozenset[MultiIndex]:
    """Monomials of the given degree lying in ``I``."""
    if degree < 0:
        raise ValueError("degree must be nonnegative")
    shift = degree - I.gen_degree
    if shift < 0 or not I.generators:
        return frozenset()
    multipliers = enumerate_multiindices(I.n, shift)
    return frozenset(g + m for g in I.generators for m in multipliers)


def hilbert(I: MonomialIdeal, degree: int) -> int:
    return len(graded_piece(I, degree))


def hilbert_quotient(I: MonomialIdeal, degree: int) -> int:
    return monomial_count(I.n, degree) - hilbert(I, degree)


def macaulay_bound_check(I: MonomialIdeal, degree: int) -> bool:
    """Does ``H_{R/I}(l+1) <= H_{R/I}(l)^<l>`` hold at ``l = degree``?"""
    if degree < 1:
        raise ValueError("degree must be at least 1")
    return hilbert_quotient(I, degree + 1) <= macaulay_growth(hilbert_quotient(I, degree), degree)


@dataclass(frozen=True)
class KoszulRelation:
    """The divided Koszul relation ``(x^b/g) e(a) - (x^a/g) e(b)``, ``g = gcd``."""

    a: MultiIndex
    b: MultiIndex

    @property
    def degree(self) -> int:
        return lcm_index(self.a, self.b).degree()

    @property
    def multipliers(self) -> tuple[MultiIndex, MultiIndex]:
        """Cofactors ``(x^b/g, x^a/g)`` attached to ``e(a)`` and ``e(b)``."""
        g = gcd_index(self.a, self.b)
        return self.b - g, self.a - g


def koszul_relations(I: MonomialIdeal, degree_cap: int) -> list[KoszulRelation]:
    """All divided Koszul relations of degree at most ``degree_cap``."""
    gens = I.generators
    out = []
    for i, a in enumerate(gens):
        for b in gens[i + 1:]:
            rel = KoszulRelation(a, b)
            if rel.degree <= degree_cap:
                out.append(rel)
    return out


def koszul_matrix(I: MonomialIdeal, relations: Iterable[KoszulRelation]) -> list[list[int]]:
    """Degree-d relations as integer vectors in ``F_0`` in degree ``d``.

    Coordinates are the pairs ``(generator, variable)`` spanning ``F_0`` in
    degree ``gen_degree + 1``.
    """
    index = {}
    for gi, g in enumerate(I.generators):
        for k in range(I.n):
            index[(g, k)] = len(index)
    rows = []
    for rel in relations:
        ma, mb = rel.multipliers
        if ma.degree() != 1 or mb.degree() != 1:
            raise ValueError("koszul_matrix only handles relations of degree gen_degree + 1")
        row = [0] * len(index)
        row[index[(rel.a, ma.index(1))]] += 1
        row[index[(rel.b, mb.index(1))]] -= 1
        rows.append(row)
    return rows


def koszul_rank(I: MonomialIdeal) -> int:
    """Dimension of the span of the degree-d divided Koszul relations."""
    d = I.gen_degree + 1
    rels = [r for r in koszul_relations(I, d) if r.degree == d]
    if not rels:
        return 0
    return exact_rank(koszul_matrix(I, rels))


def beta_1_d(I: MonomialIdeal) -> int:
    """``beta_{1,d}`` for an ideal generated in degree ``d - 1``."""
    return I.n * len(I.generators) - hilbert(I, I.gen_degree + 1)


def graded_containment(A: MonomialIdeal, B: MonomialIdeal, degree: int) -> bool:
    """True iff ``B_degree`` is contained in ``A_degree``."""
    if A.n != B.n:
        raise ValueError("ideals live in different rings")
    return graded_piece(B, degree) <= graded_piece(A, degree)
