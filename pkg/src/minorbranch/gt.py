"""Gelfand-Tsetlin patterns: dimensions and interlacing branching.

U(n) -> U(n-1) branching is multiplicity free: every integer beta
interlacing alpha occurs once.  SU(n) -> SU(n-1) multiplicities follow by
stripping full-height columns from each beta and counting collisions.
"""
from __future__ import annotations

from collections import Counter
from functools import lru_cache
from itertools import product
from typing import Iterator, Sequence

from .branching import BranchingTable
from .errors import InvalidWeightError
from .weights import YoungWeight, su_normalize

__all__ = [
    "enumerate_interlacing",
    "iter_patterns",
    "gt_count",
    "branch_u",
    "branch_su_oracle",
]


def _weight(alpha) -> YoungWeight:
    return alpha if isinstance(alpha, YoungWeight) else YoungWeight(alpha)


def _interlacing_tuples(parts: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    ranges = [range(parts[i], parts[i + 1] - 1, -1) for i in range(len(parts) - 1)]
    return product(*ranges)


def enumerate_interlacing(alpha: YoungWeight | Sequence[int]) -> list[YoungWeight]:
    """All integer beta with alpha_i >= beta_i >= alpha_{i+1}, lexicographically descending."""
    alpha = _weight(alpha)
    if alpha.rank < 2:
        raise InvalidWeightError("interlacing needs rank n >= 2")
    return [YoungWeight(b) for b in _interlacing_tuples(alpha.parts)]


def iter_patterns(alpha: YoungWeight | Sequence[int]) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Yield every GT pattern with top row alpha as a tuple of rows.

    Exponential in the size of alpha; meant for brute-force checks.
    """
    top = _weight(alpha).parts
    if len(top) == 1:
        yield (top,)
        return
    for beta in _interlacing_tuples(top):
        for rest in iter_patterns(beta):
            yield (top,) + rest


@lru_cache(maxsize=None)
def _count(parts: tuple[int, ...]) -> int:
    if len(parts) == 1:
        return 1
    total = 0
    for beta in _interlacing_tuples(parts):
        last = beta[-1]
        total += _count(tuple(b - last for b in beta))
    return total


def gt_count(alpha: YoungWeight | Sequence[int]) -> int:
    """Number of GT patterns with top row alpha (memoized level recursion)."""
    alpha = su_normalize(_weight(alpha))
    return _count(alpha.parts)


def branch_u(alpha: YoungWeight | Sequence[int]) -> BranchingTable:
    alpha = _weight(alpha)
    return BranchingTable.from_counts(alpha, {b: 1 for b in enumerate_interlacing(alpha)})


def branch_su_oracle(alpha: YoungWeight | Sequence[int]) -> BranchingTable:
    """SU branching by collapsing U(n-1) constituents modulo full columns."""
    alpha = _weight(alpha)
    if not alpha.is_su_normalized:
        raise InvalidWeightError(f"branch_su_oracle needs an SU-normalized weight, got {alpha}")
    counts = Counter(su_normalize(b) for b in enumerate_interlacing(alpha))
    return BranchingTable.from_counts(alpha, counts)
