"""Proper monomial ball maps via polynomials that equal 1 on the simplex.

A proper monomial map ``B_n -> B_k`` with components ``C_a z^a`` corresponds to
``p~(x) = sum |C_a|^2 x^a`` with nonnegative coefficients and ``p~ = 1`` on
``x_1 + ... + x_n = 1`` (the class P); ``k`` is the number of terms.
Homogenising ``p~ - 1`` with ``x_{n+1}`` and flipping ``x_{n+1} -> -x_{n+1}``
gives a form ``p`` divisible by ``s = x_1 + ... + x_{n+1}``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import factorial, isqrt
from typing import Mapping

from .combinatorics import MultiIndex, enumerate_multiindices
from .errors import NegativeCoefficient, NotInClassP
from .exact import linprog_exact, solve_linear
from .hermitian import SignedForm, rank

Poly = dict  # MultiIndex -> Fraction, inhomogeneous


def _clean(poly: Mapping) -> dict:
    return {MultiIndex(k): Fraction(v) for k, v in poly.items() if v}


def _n_of(poly: Mapping) -> int:
    return len(next(iter(poly)))


@dataclass
class ClassPCandidate:
    n: int
    coefficients: dict = field(default_factory=dict)
    member: bool = False

    def __post_init__(self):
        self.coefficients = _clean(self.coefficients)

    @property
    def degree(self) -> int:
        return max((a.degree() for a in self.coefficients), default=0)

    @property
    def k(self) -> int:
        return len(self.coefficients)

    def verify(self) -> "ClassPCandidate":
        self.member = is_class_P(self.coefficients, self.n)
        return self


@lru_cache(maxsize=None)
def _one_minus_sum_power(m: int, e: int) -> tuple:
    """Expansion of ``(1 - x_1 - ... - x_m)^e`` as ``((exps), coeff)`` pairs."""
    out: dict = {}
    for total in range(e + 1):
        sign = -1 if total % 2 else 1
        lead = factorial(e) // (factorial(e - total) * factorial(total))
        for exps in (enumerate_multiindices(m, total) if m else [()]):
            multi = factorial(total)
            for x in exps:
                multi //= factorial(x)
            key = tuple(exps)
            out[key] = out.get(key, 0) + sign * lead * multi
    return tuple((k, v) for k, v in out.items() if v)


def substitute_last(poly: Mapping, n: int) -> dict:
    """Substitute ``x_n = 1 - x_1 - ... - x_{n-1}``; result keyed by (n-1)-tuples."""
    out: dict = {}
    for a, c in poly.items():
        head = tuple(a[:-1])
        for exps, v in _one_minus_sum_power(n - 1, a[-1]):
            key = tuple(x + y for x, y in zip(head, exps)) if head else ()
            out[key] = out.get(key, Fraction(0)) + c * v
    return {k: v for k, v in out.items() if v}


def is_class_P(poly: Mapping, n: int | None = None) -> bool:
    """Is ``p~`` (nonnegative coefficients) identically 1 on ``sum x_j = 1``?"""
    poly = _clean(poly)
    if not poly:
        return False
    if n is None:
        n = _n_of(poly)
    neg = [a for a, c in poly.items() if c < 0]
    if neg:
        raise NegativeCoefficient(f"negative coefficient at {tuple(neg[0])}")
    reduced = substitute_last(poly, n)
    return reduced == {tuple([0] * (n - 1)): Fraction(1)}


def evaluate(poly: Mapping, point) -> Fraction:
    total = Fraction(0)
    for a, c in poly.items():
        term = Fraction(c)
        for x, e in zip(point, a):
            term *= Fraction(x) ** e
        total += term
    return total


def divide_by_s(p: SignedForm) -> SignedForm:
    """Exact quotient ``p / (x_1 + ... + x_n)``; raises if there is a remainder."""
    n = p.n
    rest = dict(p.coefficients)
    quot: dict = {}
    while rest:
        lead = max(rest)  # lex order, x1 largest
        c = rest[lead]
        if lead[0] == 0:
            raise NotInClassP("s does not divide p")
        t = lead.sub_unit(0)
        quot[t] = quot.get(t, Fraction(0)) + c
        for k in range(n):
            m = t.add_unit(k)
            v = rest.get(m, Fraction(0)) - c
            if v:
                rest[m] = v
            else:
                rest.pop(m, None)
    return SignedForm(n, p.degree - 1, quot)


@dataclass(frozen=True)
class FlipResult:
    p: SignedForm
    q: SignedForm
    top_coefficient: Fraction  # coefficient of x_{n+1}^d in p

    @property
    def rho(self) -> int:
        return rank(self.p)


def homogenize_flip(poly: Mapping, n: int | None = None) -> FlipResult:
    """Homogenise ``p~ - 1`` with ``x_{n+1}``, flip its sign, and divide by ``s``."""
    poly = _clean(poly)
    if n is None:
        n = _n_of(poly)
    d = max(a.degree() for a in poly)
    if d < 1:
        raise ValueError("p~ must have degree at least 1")
    if not is_class_P(poly, n):
        raise NotInClassP("p~ is not identically 1 on the hyperplane")
    shifted = dict(poly)
    zero = MultiIndex([0] * n)
    shifted[zero] = shifted.get(zero, Fraction(0)) - 1
    coeffs = {}
    for a, c in shifted.items():
        if not c:
            continue
        e = d - a.degree()
        coeffs[MultiIndex(tuple(a) + (e,))] = c * (-1) ** e
    p = SignedForm(n + 1, d, coeffs)
    # p(x, -1) = p~(x) - 1
    back = {}
    for A, c in p.coefficients.items():
        key = MultiIndex(A[:-1])
        back[key] = back.get(key, Fraction(0)) + c * (-1) ** A[-1]
    if _clean(back) != _clean(shifted):
        raise AssertionError("substitution identity failed")
    q = divide_by_s(p)
    top = p.coefficients.get(MultiIndex([0] * n + [d]), Fraction(0))
    return FlipResult(p, q, top)


def degree_bound_check(n: int, d: int, k: int) -> bool:
    """``d <= 2k - 3`` for ``n = 2``; ``d <= (k-1)/(n-1)`` for ``n > 2``."""
    if n < 2 or k < 1:
        raise ValueError("need n >= 2 and k >= 1")
    if n == 2:
        return d <= 2 * k - 3
    return Fraction(d) <= Fraction(k - 1, n - 1)


def homogeneous_rank_bound(n: int, d: int) -> Fraction:
    """Lower bound for ``rho(p)`` of the flipped form: ``(d+5)/2`` or ``d(n-1)+2``."""
    if n == 2:
        return Fraction(d + 5, 2)
    return Fraction(d * (n - 1) + 2)


@dataclass
class SearchResult:
    n: int
    d: int
    k_min: int | None
    witness: ClassPCandidate | None
    lower_bound: int  # every support smaller than this was ruled out
    supports_examined: int = 0
    pruned: int = 0
    solves: int = 0
    resolved: bool = True
    sizes: dict = field(default_factory=dict)  # size -> (examined, pruned)


def _monomials_upto(n: int, d: int) -> list[MultiIndex]:
    out = []
    for deg in range(d, -1, -1):
        out.extend(enumerate_multiindices(n, deg))
    return out


def _positive_solution(columns, rhs_index, nrows):
    """Strictly positive ``c`` with ``sum_j c_j col_j = e_rhs``, or ``None``."""
    A = [[col.get(r, 0) for col in columns] for r in range(nrows)]
    b = [1 if r == rhs_index else 0 for r in range(nrows)]
    solved = solve_linear(A, b)
    if solved is None:
        return None
    x, nullity = solved
    if nullity == 0:
        return x if all(v > 0 for v in x) else None
    k = len(columns)
    # variables c_1..c_k, t; maximise t with c_j >= t and t <= 1
    A_eq = [row + [0] for row in A]
    A_ge = []
    for j in range(k):
        row = [0] * (k + 1)
        row[j] = 1
        row[k] = -1
        A_ge.append(row)
    A_ge.append([0] * k + [-1])
    b_ge = [0] * k + [-1]
    res = linprog_exact([0] * k + [1], A_eq, b, A_ge, b_ge, maximize=True)
    if res.status != "optimal" or res.value <= 0:
        return None
    return res.x[:k]


def proper_map_search(n: int, d: int, *, budget: int = 2_000_000, prune: bool = True,
                      max_size: int | None = None) -> SearchResult:
    """Minimum number of terms of a class-P polynomial of exact degree ``d``.

    Supports are enumerated by size, then in canonical order; the first
    support admitting a strictly positive solution gives ``k_min`` and its
    witness, and every smaller support has been ruled out on the way.

    With ``prune`` two necessary conditions skip supports before any solve:
    the value 1 at each vertex ``e_j`` needs a constant or a pure power of
    ``x_j``, and the top-degree part must vanish on ``sum x_j = 0`` and so
    needs at least two terms.
    """
    if n < 2 or d < 1:
        raise ValueError("need n >= 2 and d >= 1")
    monos = _monomials_upto(n, d)
    reduced_rows = _monomials_upto(n - 1, d) if n > 1 else [MultiIndex(())]
    row_index = {tuple(r): i for i, r in enumerate(reduced_rows)}
    columns = []
    for a in monos:
        col = {}
        for key, v in substitute_last({a: Fraction(1)}, n).items():
            col[row_index[key]] = v
        columns.append(col)
    rhs = row_index[tuple([0] * (n - 1))]
    top = [i for i, a in enumerate(monos) if a.degree() == d]
    top_set = set(top)
    vertex_sets = []
    for j in range(n):
        vertex_sets.append({i for i, a in enumerate(monos)
                            if all(e == 0 for k, e in enumerate(a) if k != j)})
    result = SearchResult(n, d, None, None, 1)
    limit = max_size if max_size is not None else len(monos)
    for size in range(1, limit + 1):
        examined = pruned = 0
        for support in combinations(range(len(monos)), size):
            if result.supports_examined >= budget:
                result.resolved = False
                result.sizes[size] = (examined, pruned)
                return result
            result.supports_examined += 1
            examined += 1
            sset = set(support)
            if not sset & top_set:
                pruned += 1
                continue
            if prune and (len(sset & top_set) < 2 or any(not sset & vs for vs in vertex_sets)):
                pruned += 1
                continue
            result.solves += 1
            sol = _positive_solution([columns[i] for i in support], rhs, len(reduced_rows))
            if sol is not None:
                witness = ClassPCandidate(n, {monos[i]: v for i, v in zip(support, sol)})
                witness.verify()
                if not witness.member or witness.k != size or witness.degree != d:
                    raise AssertionError("search produced an invalid witness")
                result.k_min = size
                result.witness = witness
                result.lower_bound = size
                result.pruned += pruned
                result.sizes[size] = (examined, pruned)
                return result
        result.pruned += pruned
        result.sizes[size] = (examined, pruned)
        result.lower_bound = size + 1
    result.resolved = max_size is None
    return result


def _sqrt_text(c: Fraction) -> str:
    num, den = c.numerator, c.denominator
    rn, rd = isqrt(num), isqrt(den)
    if rn * rn == num and rd * rd == den:
        return "" if num == den else (str(rn) if rd == 1 else f"{rn}/{rd}")
    return f"sqrt({num})" if den == 1 else f"sqrt({num}/{den})"


def map_components(candidate: ClassPCandidate) -> list[str]:
    """Components ``sqrt(c_a) z^a`` of the monomial map, as formal text."""
    out = []
    for a, c in sorted(candidate.coefficients.items(), key=lambda kv: (-kv[0].degree(), [-e for e in kv[0]])):
        mono = "*".join(f"z{i}" if e == 1 else f"z{i}^{e}" for i, e in enumerate(a, 1) if e)
        coef = _sqrt_text(c)
        if not mono:
            out.append(coef or "1")
        else:
            out.append(f"{coef}*{mono}" if coef else mono)
    return out
