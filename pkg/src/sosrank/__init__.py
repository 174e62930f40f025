"""Exact tools for ranks of squared norms of diagonal Hermitian forms."""

from .combinatorics import MultiIndex, macaulay_function
from .hermitian import SignedForm, SupportPattern, min_rank
from .ideal import MonomialIdeal

__all__ = ["MultiIndex", "macaulay_function", "SignedForm", "SupportPattern", "min_rank", "MonomialIdeal"]
__version__ = "0.1.0"
