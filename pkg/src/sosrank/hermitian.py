"""Diagonal Hermitian forms in the real variables ``x_j = |z_j|^2``.

A diagonal bihomogeneous ``r`` of bidegree ``(d-1, d-1)`` becomes a real
homogeneous ``q = sum c_a x^a``; multiplying by ``|z|^2`` becomes
multiplication by ``s = x_1 + ... + x_n``, and the rank of ``r |z|^2`` is the
number of nonzero coefficients of ``s q``.

Feasibility and minimum-rank questions only depend on the sign pattern of
``q``.  Writing ``c_v = sign_v * (1 + y_v)`` with ``y_v >= 0`` turns the strict
sign conditions into closed ones (the conditions are invariant under positive
scaling, so nothing is lost), and every question becomes an exact LP.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Mapping

from .combinatorics import MultiIndex, k_zero
from .errors import BudgetExceeded
from .exact import linprog_exact
from .ideal import MonomialIdeal, canonical_key
from .lattice import bits, lattice

DEFAULT_AMBIGUOUS_CAP = 20


@dataclass(frozen=True)
class SignedForm:
    """Homogeneous real polynomial with exact rational coefficients."""

    n: int
    degree: int
    coefficients: Mapping[MultiIndex, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        coeffs = {}
        for key, value in dict(self.coefficients).items():
            key = MultiIndex(key)
            if len(key) != self.n:
                raise ValueError(f"monomial {tuple(key)} has wrong length for n={self.n}")
            if key.degree() != self.degree:
                raise ValueError(f"monomial {tuple(key)} is not of degree {self.degree}")
            value = Fraction(value)
            if value:
                coeffs[key] = value
        ordered = dict(sorted(coeffs.items(), key=lambda kv: canonical_key(kv[0])))
        object.__setattr__(self, "coefficients", ordered)

    def __eq__(self, other):
        if not isinstance(other, SignedForm):
            return NotImplemented
        return (self.n, self.degree, self.coefficients) == (other.n, other.degree, other.coefficients)

    def __hash__(self):
        return hash((self.n, self.degree, tuple(self.coefficients.items())))

    @property
    def support(self) -> frozenset[MultiIndex]:
        return frozenset(self.coefficients)

    def is_zero(self) -> bool:
        return not self.coefficients

    def scaled(self, factor) -> "SignedForm":
        factor = Fraction(factor)
        return SignedForm(self.n, self.degree, {k: v * factor for k, v in self.coefficients.items()})

    def pattern(self) -> "SupportPattern":
        return SupportPattern(
            self.n,
            self.degree,
            frozenset(k for k, v in self.coefficients.items() if v > 0),
            frozenset(k for k, v in self.coefficients.items() if v < 0),
        )


@dataclass(frozen=True)
class SupportPattern:
    """Sign assignment on degree-(d-1) monomials: positive set A, negative set B."""

    n: int
    dm1: int
    A_set: frozenset = frozenset()
    B_set: frozenset = frozenset()

    def __post_init__(self):
        A = frozenset(MultiIndex(a) for a in self.A_set)
        B = frozenset(MultiIndex(b) for b in self.B_set)
        if A & B:
            raise ValueError("positive and negative supports overlap")
        for a in A | B:
            if len(a) != self.n or a.degree() != self.dm1:
                raise ValueError(f"{tuple(a)} is not a degree-{self.dm1} monomial in {self.n} variables")
        object.__setattr__(self, "A_set", A)
        object.__setattr__(self, "B_set", B)

    @classmethod
    def from_masks(cls, n: int, dm1: int, a_mask: int, b_mask: int) -> "SupportPattern":
        lat = lattice(n, dm1)
        return cls(n, dm1, frozenset(lat.members(a_mask)), frozenset(lat.members(b_mask)))

    def masks(self) -> tuple[int, int]:
        lat = lattice(self.n, self.dm1)
        return lat.mask_of(self.A_set), lat.mask_of(self.B_set)

    @property
    def signature(self) -> tuple[int, int]:
        return len(self.A_set), len(self.B_set)

    @property
    def support(self) -> frozenset:
        return self.A_set | self.B_set

    @property
    def d(self) -> int:
        return self.dm1 + 1

    def is_full(self) -> bool:
        return len(self.support) == len(lattice(self.n, self.dm1).low)

    def ideals(self) -> tuple[MonomialIdeal, MonomialIdeal, MonomialIdeal]:
        """``(I_f, I_g, I_{f+g})``."""
        return (
            MonomialIdeal(self.n, self.dm1, tuple(self.A_set)),
            MonomialIdeal(self.n, self.dm1, tuple(self.B_set)),
            MonomialIdeal(self.n, self.dm1, tuple(self.support)),
        )


@dataclass(frozen=True)
class FeasibilityWitness:
    magnitudes: dict
    certificate: dict

    def form(self, pattern: SupportPattern) -> SignedForm:
        return realize(pattern, self.magnitudes)


def realize(pattern: SupportPattern, magnitudes: Mapping) -> SignedForm:
    keys = {MultiIndex(k) for k in magnitudes}
    if keys != set(pattern.support):
        raise ValueError("magnitudes must be keyed exactly by the pattern support")
    coeffs = {}
    for key, value in magnitudes.items():
        value = Fraction(value)
        if value <= 0:
            raise ValueError(f"magnitude for {tuple(key)} must be positive, got {value}")
        key = MultiIndex(key)
        coeffs[key] = value if key in pattern.A_set else -value
    return SignedForm(pattern.n, pattern.dm1, coeffs)


def multiply_by_s(q: SignedForm) -> SignedForm:
    """``p = (x_1 + ... + x_n) q``."""
    out: dict[MultiIndex, Fraction] = {}
    for a, c in q.coefficients.items():
        for k in range(q.n):
            A = a.add_unit(k)
            out[A] = out.get(A, Fraction(0)) + c
    return SignedForm(q.n, q.degree + 1, out)


def rank(f: SignedForm) -> int:
    return len(f.coefficients)


def signature_pair(q: SignedForm) -> tuple[int, int]:
    pos = sum(1 for v in q.coefficients.values() if v > 0)
    return pos, len(q.coefficients) - pos


class PatternSystem:
    """The linear data of ``s q`` for one sign pattern.

    ``rows`` lists, for every *ambiguous* degree-d monomial (one with both a
    positive and a negative parent), its parents as ``(low index, sign)``.
    Monomials with parents of a single sign can never cancel; ``forced_pos``
    and ``forced_neg`` count them.
    """

    def __init__(self, n: int, dm1: int, a_mask: int, b_mask: int):
        lat = lattice(n, dm1)
        self.lat = lat
        self.n, self.dm1 = n, dm1
        self.a_mask, self.b_mask = a_mask, b_mask
        f_high = lat.shift(a_mask)
        g_high = lat.shift(b_mask)
        self.f_high, self.g_high = f_high, g_high
        self.amb_mask = f_high & g_high
        self.forced_pos = bin(f_high & ~g_high).count("1")
        self.forced_neg = bin(g_high & ~f_high).count("1")
        self.rows = []
        self.row_ids = []
        for h in bits(self.amb_mask):
            row = []
            for i in lat.parents[h]:
                bit = 1 << i
                if a_mask & bit:
                    row.append((i, 1))
                elif b_mask & bit:
                    row.append((i, -1))
            self.rows.append(tuple(row))
            self.row_ids.append(h)

    @classmethod
    def of(cls, pattern: SupportPattern) -> "PatternSystem":
        return cls(pattern.n, pattern.dm1, *pattern.masks())

    @property
    def containment(self) -> bool:
        """``(I_g)_d`` inside ``(I_f)_d``."""
        return self.forced_neg == 0

    @property
    def forced(self) -> int:
        return self.forced_pos + self.forced_neg

    def solve(self, zero_rows, nonneg: bool):
        """Exact feasibility of: rows in ``zero_rows`` vanish, and (if
        ``nonneg``) every other ambiguous row is >= 0.

        Returns the coefficient map ``{low index: c}`` or ``None``.
        """
        zero_rows = set(zero_rows)
        used = [r for r in range(len(self.rows)) if r in zero_rows or nonneg]
        var_ids = sorted({i for r in used for i, _ in self.rows[r]})
        col = {i: j for j, i in enumerate(var_ids)}
        A_eq, b_eq, A_ge, b_ge = [], [], [], []
        for r in used:
            vec = [0] * len(var_ids)
            const = 0
            for i, s in self.rows[r]:
                vec[col[i]] += s
                const += s
            if r in zero_rows:
                A_eq.append(vec)
                b_eq.append(-const)
            else:
                A_ge.append(vec)
                b_ge.append(-const)
        if var_ids:
            res = linprog_exact(None, A_eq, b_eq, A_ge, b_ge, nvars=len(var_ids))
            if not res.feasible:
                return None
            y = dict(zip(var_ids, res.x))
        else:
            if any(b != 0 for b in b_eq) or any(b > 0 for b in b_ge):
                return None
            y = {}
        coeffs = {}
        for i in bits(self.a_mask):
            coeffs[i] = 1 + y.get(i, Fraction(0))
        for i in bits(self.b_mask):
            coeffs[i] = -(1 + y.get(i, Fraction(0)))
        return coeffs

    def max_zero_set(self, nonneg: bool, order: str = "descending", cap: int = DEFAULT_AMBIGUOUS_CAP):
        """Largest set of ambiguous rows that can vanish simultaneously.

        Returns ``(size, coefficient map)`` or ``None`` when even the empty
        zero set is infeasible.  Feasible zero sets form a down-closed family,
        which both enumeration orders exploit.
        """
        m = len(self.rows)
        if m > cap:
            raise BudgetExceeded(f"ambiguous set of size {m} exceeds cap {cap}")
        base = self.solve((), nonneg)
        if base is None:
            return None
        if m == 0:
            return 0, base
        if order == "descending":
            return self._top_down(nonneg, base)
        if order == "ascending":
            return self._levelwise(nonneg, base)
        raise ValueError(f"unknown order {order!r}")

    def _levelwise(self, nonneg, base):
        best = (0, base)
        level = []
        for r in range(len(self.rows)):
            sol = self.solve((r,), nonneg)
            if sol is not None:
                level.append((r,))
                best = (1, sol)
        feasible = set(level)
        k = 1
        while level:
            nxt = []
            for i, s in enumerate(level):
                for t in level[i + 1:]:
                    if s[:-1] != t[:-1]:
                        break
                    cand = s + (t[-1],)
                    if any(cand[:j] + cand[j + 1:] not in feasible for j in range(k - 1)):
                        continue
                    sol = self.solve(cand, nonneg)
                    if sol is not None:
                        nxt.append(cand)
                        best = (k + 1, sol)
            k += 1
            level = nxt
            feasible = set(nxt)
        return best

    def _top_down(self, nonneg, base):
        singles = {}
        for r in range(len(self.rows)):
            sol = self.solve((r,), nonneg)
            if sol is not None:
                singles[r] = sol
        zeroable = list(singles)
        # memo of infeasible pairs; any candidate containing one is skipped
        bad_pairs = set()
        for pair in combinations(zeroable, 2):
            if self.solve(pair, nonneg) is None:
                bad_pairs.add(pair)
        for size in range(len(zeroable), 0, -1):
            for cand in combinations(zeroable, size):
                if size >= 2 and any(pair in bad_pairs for pair in combinations(cand, 2)):
                    continue
                sol = singles[cand[0]] if size == 1 else self.solve(cand, nonneg)
                if sol is not None:
                    return size, sol
        return 0, base

    def coefficients_to_form(self, coeffs) -> SignedForm:
        lat = self.lat
        return SignedForm(self.n, self.dm1, {lat.low[i]: c for i, c in coeffs.items()})


def squared_norm_feasible(pattern: SupportPattern) -> FeasibilityWitness | None:
    """Positive magnitudes making every coefficient of ``s q`` nonnegative, if any."""
    system = PatternSystem.of(pattern)
    if pattern.B_set and not pattern.A_set:
        return None
    if not system.containment:
        return None
    coeffs = system.solve((), nonneg=True)
    if coeffs is None:
        return None
    return _witness(system, coeffs)


def _witness(system: PatternSystem, coeffs) -> FeasibilityWitness:
    q = system.coefficients_to_form(coeffs)
    p = multiply_by_s(q)
    lat = system.lat
    support_high = system.f_high | system.g_high
    cert = {lat.high[h]: p.coefficients.get(lat.high[h], Fraction(0)) for h in bits(support_high)}
    mags = {k: abs(v) for k, v in q.coefficients.items()}
    return FeasibilityWitness(mags, cert)


def check_witness(pattern: SupportPattern, witness: FeasibilityWitness) -> bool:
    """Independent recertification: recompute ``s q`` and test every coefficient."""
    if any(Fraction(v) <= 0 for v in witness.magnitudes.values()):
        return False
    q = realize(pattern, witness.magnitudes)
    p = multiply_by_s(q)
    if any(v < 0 for v in p.coefficients.values()):
        return False
    return all(p.coefficients.get(k, Fraction(0)) == v for k, v in witness.certificate.items())


def min_rank(
    pattern: SupportPattern,
    *,
    squared_norm: bool = True,
    order: str = "descending",
    cap: int = DEFAULT_AMBIGUOUS_CAP,
) -> int | None:
    """Minimum number of nonzero coefficients of ``s q`` over admissible magnitudes.

    With ``squared_norm`` the magnitudes must make ``s q`` coefficientwise
    nonnegative (``None`` if impossible); otherwise any positive magnitudes
    are allowed.
    """
    return min_rank_witness(pattern, squared_norm=squared_norm, order=order, cap=cap)[0]


def min_rank_witness(pattern, *, squared_norm=True, order="descending", cap=DEFAULT_AMBIGUOUS_CAP):
    """Like :func:`min_rank` but also returns a minimising ``q`` (or ``None``)."""
    system = PatternSystem.of(pattern)
    if squared_norm:
        if pattern.B_set and not pattern.A_set:
            return None, None
        if not system.containment:
            return None, None
    found = system.max_zero_set(squared_norm, order=order, cap=cap)
    if found is None:
        return None, None
    size, coeffs = found
    q = system.coefficients_to_form(coeffs)
    rho = system.forced + len(system.rows) - size
    if rank(multiply_by_s(q)) != rho:
        # the solver's vertex may zero out extra rows; it never has more
        raise AssertionError("minimising witness does not realise the minimum rank")
    return rho, q


@dataclass(frozen=True)
class WindowVerdict:
    consistent: bool
    n: int
    rho: int
    windows: tuple[tuple[int, int], ...]
    threshold: int
    gap: tuple[int, int] | None = None

    @property
    def label(self) -> str:
        return "CONSISTENT" if self.consistent else "VIOLATION"


def sos_windows(n: int) -> tuple[tuple[tuple[int, int], ...], int]:
    """Allowed rank windows ``[M(k), nk]`` for ``k <= k0`` and the threshold ``M(k0+1)``."""
    k0 = k_zero(n)
    windows = tuple((n * k - k * (k - 1) // 2, n * k) for k in range(k0 + 1))
    threshold = (k0 + 1) * n - k0 * (k0 + 1) // 2
    return windows, threshold


def sos_window_verdict(n: int, rho: int) -> WindowVerdict:
    if n < 2 or rho < 0:
        raise ValueError("need n >= 2 and rho >= 0")
    windows, threshold = sos_windows(n)
    if rho >= threshold or any(lo <= rho <= hi for lo, hi in windows):
        return WindowVerdict(True, n, rho, windows, threshold)
    below = max((hi for lo, hi in windows if hi < rho), default=-1)
    above = min([lo for lo, hi in windows if lo > rho] + [threshold])
    return WindowVerdict(False, n, rho, windows, threshold, (below + 1, above - 1))
