"""Multi-indices, binomials and Macaulay representations.

All arithmetic is on Python integers; nothing here touches floating point.
The canonical monomial order used throughout the package is graded-lex with
x1 > x2 > ... > xn, i.e. within a degree the exponent tuples are listed in
descending lexicographic order (x1^3, x1^2 x2, x1^2 x3, x1 x2^2, ...).
"""

from __future__ import annotations

from functools import lru_cache
from math import comb
from typing import Iterator, NamedTuple


class MultiIndex(tuple):
    """Exponent tuple of a monomial.

    A thin ``tuple`` subclass so it hashes and compares like a tuple and can
    be used freely as a dict key.
    """

    __slots__ = ()

    def __new__(cls, exponents):
        exps = tuple(int(e) for e in exponents)
        if not exps:
            raise ValueError("a multi-index needs at least one component")
        if any(e < 0 for e in exps):
            raise ValueError(f"negative exponent in {exps}")
        return super().__new__(cls, exps)

    @property
    def n(self) -> int:
        return len(self)

    def degree(self) -> int:
        return sum(self)

    def add_unit(self, k: int) -> "MultiIndex":
        """Return ``self + e_k`` (``k`` is 0-based)."""
        exps = list(self)
        exps[k] += 1
        return MultiIndex(exps)

    def sub_unit(self, k: int) -> "MultiIndex":
        """Return ``self - e_k``; the k-th component must be positive."""
        if self[k] == 0:
            raise ValueError(f"cannot subtract e_{k + 1} from {tuple(self)}")
        exps = list(self)
        exps[k] -= 1
        return MultiIndex(exps)

    def __add__(self, other):
        return MultiIndex(a + b for a, b in zip(self, other, strict=True))

    def __sub__(self, other):
        return MultiIndex(a - b for a, b in zip(self, other, strict=True))

    def divides(self, other) -> bool:
        return all(a <= b for a, b in zip(self, other))

    def __repr__(self):
        return f"MultiIndex({tuple(self)})"


def unit(n: int, k: int) -> MultiIndex:
    """The unit multi-index e_k of length n (``k`` is 0-based)."""
    return MultiIndex(1 if i == k else 0 for i in range(n))


def gcd_index(a, b) -> MultiIndex:
    return MultiIndex(min(x, y) for x, y in zip(a, b))


def lcm_index(a, b) -> MultiIndex:
    return MultiIndex(max(x, y) for x, y in zip(a, b))


def binomial(n: int, k: int) -> int:
    """Binomial coefficient, zero outside ``0 <= k <= n``."""
    if k < 0 or n < 0 or k > n:
        return 0
    return comb(n, k)


def monomial_count(n: int, degree: int) -> int:
    return binomial(degree + n - 1, degree)


def _compositions(n: int, degree: int) -> Iterator[tuple[int, ...]]:
    # Descending lex: the first component runs from `degree` down to 0.
    if n == 1:
        yield (degree,)
        return
    for first in range(degree, -1, -1):
        for rest in _compositions(n - 1, degree - first):
            yield (first,) + rest


@lru_cache(maxsize=None)
def enumerate_multiindices(n: int, degree: int) -> tuple[MultiIndex, ...]:
    """All multi-indices of length ``n`` and the given degree, graded-lex order."""
    if n < 1 or degree < 0:
        raise ValueError("need n >= 1 and degree >= 0")
    return tuple(MultiIndex(c) for c in _compositions(n, degree))


class MacaulayRep(NamedTuple):
    """The nu-th Macaulay representation: pairs (k_i, i), i descending."""

    c: int
    nu: int
    terms: tuple[tuple[int, int], ...]

    def value(self) -> int:
        return sum(binomial(k, i) for k, i in self.terms)


def macaulay_representation(c: int, nu: int) -> MacaulayRep:
    """Greedy expansion ``c = C(k_nu, nu) + C(k_{nu-1}, nu-1) + ...``.

    At each level the largest ``k`` with ``C(k, i) <= remainder`` is taken;
    this yields the strictly descending chain ``k_nu > ... > k_J >= J > 0``.
    """
    if c < 1 or nu < 1:
        raise ValueError("Macaulay representation needs c >= 1 and nu >= 1")
    terms = []
    rest = c
    i = nu
    while rest > 0:
        # i cannot reach 0 here: with k_i >= i at every level the remainder
        # after level 1 is always 0.
        k = i
        while binomial(k + 1, i) <= rest:
            k += 1
        terms.append((k, i))
        rest -= binomial(k, i)
        i -= 1
    return MacaulayRep(c, nu, tuple(terms))


def macaulay_growth(c: int, nu: int) -> int:
    """``c^<nu>``; zero for ``c == 0``."""
    if nu < 1:
        raise ValueError("nu must be positive")
    if c < 0:
        raise ValueError("c must be nonnegative")
    if c == 0:
        return 0
    rep = macaulay_representation(c, nu)
    return sum(binomial(k + 1, i + 1) for k, i in rep.terms)


def macaulay_function(n: int, dm1: int, k: int) -> int:
    """Lower bound for ``H_I(d)`` over ideals with ``k`` generators of degree ``dm1``.

    ``M(k) = C(d+n-1, d) - (C(d-1+n-1, d-1) - k)^<d-1>`` with ``d = dm1 + 1``.
    """
    if n < 1 or dm1 < 1:
        raise ValueError("need n >= 1 and dm1 >= 1")
    total = monomial_count(n, dm1)
    if not 0 <= k <= total:
        raise ValueError(f"k={k} outside [0, {total}] for n={n}, degree {dm1}")
    d = dm1 + 1
    return monomial_count(n, d) - macaulay_growth(total - k, dm1)


def closed_form_check(n: int, *, part: str, k: int | None = None, j: int | None = None) -> int:
    """Closed forms for the Macaulay function with few generators.

    part ``"a"``: ``M(k) = nk - k(k-1)/2`` for ``0 <= k <= n``;
    part ``"b"``: ``M(n-j) = n(n+1)/2 - j(j+1)/2`` for ``0 <= j <= n``;
    part ``"c"``: ``M(n+j) = n(n+1)/2 + nj - j(j+1)/2`` for ``0 <= j <= n-1``.
    """
    if part == "a":
        if k is None or not 0 <= k <= n:
            raise ValueError("part (a) needs 0 <= k <= n")
        return n * k - k * (k - 1) // 2
    if part == "b":
        if j is None or not 0 <= j <= n:
            raise ValueError("part (b) needs 0 <= j <= n")
        return n * (n + 1) // 2 - j * (j + 1) // 2
    if part == "c":
        if j is None or not 0 <= j <= n - 1:
            raise ValueError("part (c) needs 0 <= j <= n - 1")
        return n * (n + 1) // 2 + n * j - j * (j + 1) // 2
    raise ValueError(f"unknown part {part!r}")


def k_zero(n: int) -> int:
    """Largest ``k >= 0`` with ``k(k+1)/2 < n - 1``."""
    if n < 2:
        raise ValueError("k_zero needs n >= 2")
    k = 0
    while (k + 1) * (k + 2) // 2 < n - 1:
        k += 1
    return k
