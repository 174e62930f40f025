"""Bitmask view of the degree-(d-1) / degree-d monomial lattice.

Sweeps touch millions of patterns, so graded pieces are computed as ORs of
precomputed bitmasks instead of sets of tuples.  Bit ``i`` of a "low" mask
is the i-th degree-(d-1) monomial in canonical order; bit ``h`` of a "high"
mask is the h-th degree-d monomial.
"""

from __future__ import annotations

from functools import lru_cache

from .combinatorics import MultiIndex, enumerate_multiindices


def bits(mask: int):
    """Indices of the set bits of ``mask``, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class DegreeLattice:
    def __init__(self, n: int, dm1: int):
        self.n = n
        self.dm1 = dm1
        self.d = dm1 + 1
        self.low = enumerate_multiindices(n, dm1)
        self.high = enumerate_multiindices(n, dm1 + 1)
        self.low_index = {a: i for i, a in enumerate(self.low)}
        self.high_index = {A: h for h, A in enumerate(self.high)}
        # up[i]: degree-d multiples of low[i]; up_var[i][k]: index of low[i] + e_k
        self.up = []
        self.up_var = []
        for a in self.low:
            targets = [self.high_index[a.add_unit(k)] for k in range(n)]
            self.up_var.append(tuple(targets))
            m = 0
            for h in targets:
                m |= 1 << h
            self.up.append(m)
        # parents[h]: low indices dividing high[h]
        self.parents = []
        for A in self.high:
            self.parents.append(tuple(
                self.low_index[A.sub_unit(k)] for k in range(n) if A[k] > 0
            ))
        self.full_low = (1 << len(self.low)) - 1
        self.full_high = (1 << len(self.high)) - 1
        # Newton-diagram adjacency: a ~ b iff they share a degree-d multiple
        self.nbr = []
        for i in range(len(self.low)):
            m = 0
            for j in range(len(self.low)):
                if j != i and self.up[i] & self.up[j]:
                    m |= 1 << j
            self.nbr.append(m)
        # zero_var[k]: low monomials not divisible by x_k
        self.zero_var = []
        for k in range(n):
            m = 0
            for i, a in enumerate(self.low):
                if a[k] == 0:
                    m |= 1 << i
            self.zero_var.append(m)

    def shift(self, low_mask: int) -> int:
        """High mask of the degree-d piece of the ideal generated by ``low_mask``."""
        up = self.up
        out = 0
        while low_mask:
            lb = low_mask & -low_mask
            out |= up[lb.bit_length() - 1]
            low_mask ^= lb
        return out

    def is_connected(self, support: int) -> bool:
        """Is the Newton diagram on ``support`` connected (empty counts as not)?"""
        if not support:
            return False
        seen = support & -support
        frontier = seen
        nbr = self.nbr
        while frontier:
            lb = frontier & -frontier
            frontier ^= lb
            new = nbr[lb.bit_length() - 1] & support & ~seen
            seen |= new
            frontier |= new
        return seen == support

    def is_primitive(self, support: int) -> bool:
        """No variable divides every monomial of ``support``."""
        return all(support & z for z in self.zero_var)

    def node_count(self, a_mask: int, b_mask: int) -> int:
        f = self.shift(a_mask)
        g = self.shift(b_mask)
        fg = f | g
        return bin(fg & ~f).count("1") + bin(fg & ~g).count("1")

    def mask_of(self, indices) -> int:
        m = 0
        for a in indices:
            m |= 1 << self.low_index[MultiIndex(a)]
        return m

    def members(self, low_mask: int) -> list[MultiIndex]:
        return [self.low[i] for i in bits(low_mask)]


@lru_cache(maxsize=None)
def lattice(n: int, dm1: int) -> DegreeLattice:
    return DegreeLattice(n, dm1)
