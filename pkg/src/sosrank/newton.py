"""Newton diagrams of q, pi-degree, node counts and the three-variable rank bound.

``Gamma(q)`` has a vertex per monomial of q and an edge ``a -- b`` whenever
``x_j x^a = x_k x^b`` for some ``j, k``; for distinct monomials of the same
degree this says exactly that ``a`` and ``b`` share a degree-d multiple.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .combinatorics import MultiIndex, binomial, enumerate_multiindices
from .errors import DisconnectedDiagram, SearchExhausted
from .hermitian import SignedForm, SupportPattern, min_rank, multiply_by_s, rank, realize
from .ideal import beta_1_d, canonical_key, hilbert
from .lattice import bits, lattice

FILL_BRUTE_FORCE_CAP = 16


@dataclass(frozen=True)
class NewtonGraph:
    vertices: frozenset
    edges: frozenset  # of frozenset pairs

    def neighbours(self, v) -> set:
        return {w for e in self.edges if v in e for w in e if w != v}


def _support(obj) -> tuple[int, frozenset]:
    if isinstance(obj, SignedForm):
        return obj.n, obj.support
    if isinstance(obj, SupportPattern):
        return obj.n, obj.support
    raise TypeError(f"expected SignedForm or SupportPattern, got {type(obj).__name__}")


def _adjacent(a, b) -> bool:
    # x_j x^a = x_k x^b with a != b  <=>  a - b = e_k - e_j
    diff = [x - y for x, y in zip(a, b)]
    return sorted(diff) == [-1] + [0] * (len(diff) - 2) + [1]


def build_graph(obj: Union[SignedForm, SupportPattern]) -> NewtonGraph:
    n, support = _support(obj)
    verts = sorted(support, key=canonical_key)
    edges = set()
    for i, a in enumerate(verts):
        for b in verts[i + 1:]:
            if n >= 2 and _adjacent(a, b):
                edges.add(frozenset((a, b)))
    return NewtonGraph(frozenset(verts), frozenset(edges))


def connected_components(G: NewtonGraph) -> list[frozenset]:
    parent = {v: v for v in G.vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for e in G.edges:
        a, b = tuple(e)
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    groups: dict = {}
    for v in G.vertices:
        groups.setdefault(find(v), set()).add(v)
    comps = [frozenset(g) for g in groups.values()]
    comps.sort(key=lambda c: canonical_key(min(c, key=canonical_key)))
    return comps


def is_connected(obj) -> bool:
    G = build_graph(obj)
    return len(connected_components(G)) == 1


def component_rank_additivity_check(pattern: SupportPattern, magnitudes) -> bool:
    """``rho(s q)`` equals the sum of ``rho(s q_j)`` over diagram components."""
    q = realize(pattern, magnitudes)
    total = rank(multiply_by_s(q))
    parts = 0
    for comp in connected_components(build_graph(q)):
        qj = SignedForm(q.n, q.degree, {k: q.coefficients[k] for k in comp})
        parts += rank(multiply_by_s(qj))
    return total == parts


def _gcd_of_support(support) -> MultiIndex:
    it = iter(support)
    g = list(next(it))
    for a in it:
        g = [min(x, y) for x, y in zip(g, a)]
    return MultiIndex(g)


def pi_degree(p: SignedForm) -> int:
    """Degree of ``p`` after removing its largest monomial factor."""
    if p.is_zero():
        raise ValueError("pi-degree of the zero form is undefined")
    return p.degree - _gcd_of_support(p.support).degree()


def strip_common_factor(q: SignedForm) -> SignedForm:
    if q.is_zero():
        raise ValueError("cannot strip the common factor of the zero form")
    g = _gcd_of_support(q.support)
    return SignedForm(q.n, q.degree - g.degree(), {a - g: c for a, c in q.coefficients.items()})


def strip_pattern(pattern: SupportPattern) -> SupportPattern:
    if not pattern.support:
        raise ValueError("empty pattern")
    g = _gcd_of_support(pattern.support)
    return SupportPattern(
        pattern.n,
        pattern.dm1 - g.degree(),
        frozenset(a - g for a in pattern.A_set),
        frozenset(b - g for b in pattern.B_set),
    )


def node_count(pattern: SupportPattern) -> int:
    """``#(sq) = 2 H_{f+g}(d) - H_f(d) - H_g(d)``; an empty side contributes 0."""
    I_f, I_g, I_fg = pattern.ideals()
    d = pattern.d
    return 2 * hilbert(I_fg, d) - hilbert(I_f, d) - hilbert(I_g, d)


def betti_rank_bound(pattern: SupportPattern) -> int:
    """``n gamma_0 - 2 gamma_1 + alpha_1 + beta_1`` in degree d."""
    I_f, I_g, I_fg = pattern.ideals()
    return pattern.n * len(I_fg) - 2 * beta_1_d(I_fg) + beta_1_d(I_f) + beta_1_d(I_g)


@dataclass(frozen=True)
class TEPartition:
    d: int
    T_plus: int
    T_minus: int
    T_zero: int
    E_plus: int
    E_minus: int
    E_zero: int
    T_residual: int = 0
    E_residual: int = 0

    @property
    def T(self) -> int:
        return self.T_plus + self.T_minus + self.T_zero + self.T_residual

    @property
    def E(self) -> int:
        return self.E_plus + self.E_minus + self.E_zero + self.E_residual

    def gamma_1(self) -> int:
        return self.E_zero + self.E_plus + self.E_minus + 2 * (self.T_zero + self.T_plus + self.T_minus)

    def alpha_plus_beta(self) -> int:
        """``gamma_1 - (|E0| + |T0|)``; meaningful for full patterns."""
        return self.gamma_1() - (self.E_zero + self.T_zero)

    def mixed_bound_holds(self) -> bool:
        return self.E_zero + 2 * self.T_zero <= self.d * self.d - self.d


def te_partition(pattern: SupportPattern) -> TEPartition:
    if pattern.n != 3:
        raise ValueError("the T/E partition is defined for three variables")
    return te_counts(pattern.dm1, *pattern.masks())


def te_counts(dm1: int, a_mask: int, b_mask: int) -> TEPartition:
    """T/E partition of the degree-d monomials for bitmask patterns in three variables.

    T monomials involve all three variables, E monomials exactly two; each is
    labelled by the signs of its parents, with ``residual`` for those having a
    parent outside the support.
    """
    lat = lattice(3, dm1)
    counts = dict(Tp=0, Tm=0, T0=0, Ep=0, Em=0, E0=0, Tr=0, Er=0)
    for h, A in enumerate(lat.high):
        zeros = (A[0] == 0) + (A[1] == 0) + (A[2] == 0)
        if zeros == 0:
            kind = "T"
        elif zeros == 1:
            kind = "E"
        else:
            continue
        par = lat.parents[h]
        in_a = sum(1 for i in par if a_mask >> i & 1)
        in_b = sum(1 for i in par if b_mask >> i & 1)
        if in_a + in_b < len(par):
            counts[kind + "r"] += 1
        elif in_b == 0:
            counts[kind + "p"] += 1
        elif in_a == 0:
            counts[kind + "m"] += 1
        else:
            counts[kind + "0"] += 1
    return TEPartition(dm1 + 1, counts["Tp"], counts["Tm"], counts["T0"],
                       counts["Ep"], counts["Em"], counts["E0"], counts["Tr"], counts["Er"])


def triple_rule_holds(pattern: SupportPattern) -> bool:
    """In each triple ``{b+e1, b+e2, b+e3}`` at most two pairs are mixed (one in A, one in B)."""
    if pattern.n != 3 or pattern.dm1 < 1:
        return True
    for b in enumerate_multiindices(3, pattern.dm1 - 1):
        tri = [b.add_unit(k) for k in range(3)]
        mixed = 0
        for i in range(3):
            for j in range(i + 1, 3):
                u, v = tri[i], tri[j]
                if (u in pattern.A_set and v in pattern.B_set) or (u in pattern.B_set and v in pattern.A_set):
                    mixed += 1
        if mixed > 2:
            return False
    return True


def lp_bound(pi: int) -> int:
    """Integer form of ``rho >= (pi + 5) / 2``."""
    return (pi + 6) // 2


@dataclass(frozen=True)
class LPCheck:
    holds: bool
    rho: int
    pi: int
    bound: int
    exact: bool  # False when rho is the node-count floor rather than the true minimum


def lp_theorem_check(obj: Union[SupportPattern, SignedForm], *, exact: bool = False) -> LPCheck:
    """Check ``rho(p) >= ceil((pi(p) + 5) / 2)`` for ``p = s q`` in three variables.

    A :class:`SignedForm` is taken as ``q`` itself.  For a pattern the rank is
    minimised over all positive magnitudes; since every node of ``s q`` is a
    nonzero coefficient, ``rho >= #(sq)``, and the LP search only runs when
    that floor does not already settle the bound (or when ``exact``).
    """
    n, support = _support(obj)
    if n != 3:
        raise ValueError("this rank bound is stated for three variables")
    if not support:
        raise ValueError("q must be nonzero")
    if len(connected_components(build_graph(obj))) != 1:
        raise DisconnectedDiagram("Gamma(q) is not connected")
    if isinstance(obj, SignedForm):
        p = multiply_by_s(obj)
        pi = pi_degree(p)
        rho = rank(p)
        return LPCheck(rho >= lp_bound(pi), rho, pi, lp_bound(pi), True)
    prim = strip_pattern(obj)
    # s q' has no monomial factor when q' has none, so pi(p) = deg q' + 1
    pi = prim.d
    bound = lp_bound(pi)
    floor = node_count(prim)
    if floor >= bound and not exact:
        return LPCheck(True, floor, pi, bound, False)
    rho = min_rank(prim, squared_norm=False)
    return LPCheck(rho >= bound, rho, pi, bound, True)


def fill_masks(n: int, dm1: int, a_mask: int, b_mask: int, cap: int = FILL_BRUTE_FORCE_CAP):
    """Extend a pattern to full support minimising the node count.

    Brute force over all sign assignments of the missing monomials when there
    are at most ``cap`` of them, otherwise a greedy pass in canonical order.
    Ties go to the lexicographically first assignment with A before B.
    Returns ``(a_mask', b_mask', nodes')``.
    """
    lat = lattice(n, dm1)
    missing = [i for i in range(len(lat.low)) if not ((a_mask | b_mask) >> i & 1)]
    m = len(missing)
    if m == 0:
        return a_mask, b_mask, lat.node_count(a_mask, b_mask)
    total_high = len(lat.high)
    fa, fb = lat.shift(a_mask), lat.shift(b_mask)
    if m <= cap:
        # bit (m-1-j) of s  <->  missing[j] assigned to A
        ups = [lat.up[missing[m - 1 - t]] for t in range(m)]
        table = [0] * (1 << m)
        for s in range(1, 1 << m):
            low = s & -s
            table[s] = table[s ^ low] | ups[low.bit_length() - 1]
        full = (1 << m) - 1
        best_nodes = None
        best_s = None
        for s in range(full, -1, -1):
            nodes = 2 * total_high - bin(fa | table[s]).count("1") - bin(fb | table[full ^ s]).count("1")
            if best_nodes is None or nodes < best_nodes:
                best_nodes, best_s = nodes, s
        a2, b2 = a_mask, b_mask
        for j, i in enumerate(missing):
            if best_s >> (m - 1 - j) & 1:
                a2 |= 1 << i
            else:
                b2 |= 1 << i
        return a2, b2, best_nodes
    a2, b2 = a_mask, b_mask
    for i in missing:
        na = lat.node_count(a2 | 1 << i, b2)
        nb = lat.node_count(a2, b2 | 1 << i)
        if na <= nb:
            a2 |= 1 << i
        else:
            b2 |= 1 << i
    return a2, b2, lat.node_count(a2, b2)


def fill_to_full(pattern: SupportPattern, cap: int = FILL_BRUTE_FORCE_CAP) -> SupportPattern:
    """A full-support pattern extending ``pattern`` with no more nodes."""
    if pattern.n != 3:
        raise ValueError("filling is implemented for three variables")
    if not pattern.support:
        raise ValueError("empty pattern")
    lat = lattice(3, pattern.dm1)
    a, b = pattern.masks()
    if not lat.is_connected(a | b):
        raise DisconnectedDiagram("Gamma(q) is not connected")
    if not lat.is_primitive(a | b):
        raise ValueError("the terms of q share a monomial factor")
    a2, b2, nodes = fill_masks(3, pattern.dm1, a, b, cap)
    if nodes > lat.node_count(a, b):
        raise SearchExhausted("no full extension keeps the node count from growing")
    return SupportPattern.from_masks(3, pattern.dm1, a2, b2)


def render_diagram(pattern: SupportPattern) -> str:
    """ASCII triangle in the layout of the usual degree-(d-1) Newton diagram.

    Row ``e`` holds the monomials with ``x3`` exponent ``e`` (pure ``x1``/``x2``
    powers on top), ``x1`` exponent decreasing left to right.  ``P`` marks a
    positive coefficient, ``N`` a negative one and ``.`` an absent monomial.
    """
    if pattern.n != 3:
        raise ValueError("diagram rendering needs three variables")
    dm1 = pattern.dm1
    lines = []
    for e in range(dm1 + 1):
        cells = []
        for a1 in range(dm1 - e, -1, -1):
            mono = MultiIndex((a1, dm1 - e - a1, e))
            cells.append("P" if mono in pattern.A_set else "N" if mono in pattern.B_set else ".")
        lines.append(" " * e + " ".join(cells))
    return "\n".join(lines)


def export_edge_list(G: NewtonGraph) -> str:
    """Tab-separated edge list; isolated vertices appear on their own line."""
    from .formats import format_monomial

    name = {v: format_monomial(v, sep="*") for v in G.vertices}
    lines = []
    touched = set()
    for e in sorted(G.edges, key=lambda e: sorted(canonical_key(v) for v in e)):
        a, b = sorted(e, key=canonical_key)
        lines.append(f"{name[a]}\t{name[b]}")
        touched |= {a, b}
    for v in sorted(G.vertices - touched, key=canonical_key):
        lines.append(name[v])
    return "\n".join(lines)


def final_chain_value(d: int) -> Fraction:
    """``C(d+2, 2) - (3/2)(d-1) - (1/2)(d^2-d)``, which simplifies to ``(d+5)/2``."""
    return Fraction(binomial(d + 2, 2)) - Fraction(3, 2) * (d - 1) - Fraction(d * d - d, 2)
