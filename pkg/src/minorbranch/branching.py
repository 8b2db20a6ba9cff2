"""SU(n-1) in SU(n) branching coefficients from the kernel kbar.

The multiplicity of the SU(n-1) irrep gamma inside the SU(n) irrep alpha
is kbar(alpha + rho_n; gamma + rho_{n-1}).  Everything here is exact
integer arithmetic; the float path is only guarded against, never used.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import InternalConsistencyError, InvalidWeightError
from .kernels import kbar, kbar_support
from .weights import YoungWeight, weyl_dimension, young_to_dynkin

__all__ = [
    "INTEGRALITY_TOL",
    "BranchingTable",
    "dominant_gammas",
    "branching_coefficient",
    "branch_su",
    "count_constituents",
    "corollary_polytope_count",
    "max_multiplicity",
    "stretch_profile",
    "multiplicity_pattern",
    "level_sets",
    "is_nested",
]

INTEGRALITY_TOL = 1e-9


@dataclass(frozen=True)
class BranchingTable:
    """Multiplicities of lower-rank irreps in the restriction of ``alpha``.

    ``entries`` is sorted by Young coordinates so iteration, equality and
    serialization are canonical.
    """

    alpha: YoungWeight
    entries: tuple[tuple[YoungWeight, int], ...]

    @classmethod
    def from_counts(cls, alpha: YoungWeight, counts: Mapping[YoungWeight, int]) -> "BranchingTable":
        items = []
        for gamma, m in counts.items():
            if m < 0:
                raise InternalConsistencyError(f"negative multiplicity {m} for {gamma}")
            if m:
                items.append((gamma, int(m)))
        items.sort(key=lambda gm: gm[0].parts)
        return cls(alpha, tuple(items))

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[tuple[YoungWeight, int]]:
        return iter(self.entries)

    def __getitem__(self, gamma: YoungWeight | Sequence[int]) -> int:
        if not isinstance(gamma, YoungWeight):
            gamma = YoungWeight(gamma)
        for g, m in self.entries:
            if g == gamma:
                return m
        return 0

    def as_dict(self) -> dict[YoungWeight, int]:
        return dict(self.entries)

    @property
    def max_multiplicity(self) -> int:
        return max(m for _, m in self.entries)

    def dimension_sum(self) -> int:
        return sum(m * weyl_dimension(g) for g, m in self.entries)

    @property
    def dim_check(self) -> bool:
        return self.dimension_sum() == weyl_dimension(self.alpha)

    def to_json(self) -> dict:
        return {
            "alpha": self.alpha.to_json(),
            "entries": [
                {
                    "gamma": g.to_json(),
                    "dynkin": list(young_to_dynkin(g).labels),
                    "mult": m,
                    "dim": weyl_dimension(g),
                }
                for g, m in self.entries
            ],
            "dim_check": self.dim_check,
        }


def _su_weight(alpha) -> YoungWeight:
    if not isinstance(alpha, YoungWeight):
        alpha = YoungWeight(alpha)
    if not alpha.is_su_normalized:
        raise InvalidWeightError(f"expected an SU-normalized weight (last part 0), got {alpha}")
    if alpha.rank < 2:
        raise InvalidWeightError("branching needs rank n >= 2")
    return alpha


def dominant_gammas(rank: int, bound: int) -> Iterator[YoungWeight]:
    """SU-normalized dominant weights of the given rank with gamma_1 <= bound."""
    if rank == 1:
        yield YoungWeight((0,))
        return
    for head in combinations_with_replacement(range(bound, -1, -1), rank - 1):
        yield YoungWeight(head + (0,))


def _integral(value, where) -> int:
    r = round(value)
    if abs(value - r) > INTEGRALITY_TOL:
        raise InternalConsistencyError(f"non-integral multiplicity {value!r} at {where}")
    return int(r)


def branching_coefficient(alpha: YoungWeight | Sequence[int], gamma: YoungWeight | Sequence[int]) -> int:
    """Multiplicity of gamma (rank n-1) in alpha (rank n), both SU-normalized."""
    alpha = _su_weight(alpha)
    if not isinstance(gamma, YoungWeight):
        gamma = YoungWeight(gamma)
    if gamma.rank != alpha.rank - 1 or not gamma.is_su_normalized:
        raise InvalidWeightError(f"gamma must be SU-normalized of rank {alpha.rank - 1}: {gamma}")
    return _integral(kbar(alpha.plus_rho(), gamma.plus_rho()), (alpha, gamma))


def branch_su(alpha: YoungWeight | Sequence[int]) -> BranchingTable:
    """Decompose the SU(n) irrep alpha into SU(n-1) irreps."""
    alpha = _su_weight(alpha)
    shifted = alpha.plus_rho()
    counts = {}
    # gamma + rho in the closed shifted support forces gamma_1 <= alpha_1 + 1
    for gamma in dominant_gammas(alpha.rank - 1, alpha.parts[0] + 1):
        m = _integral(kbar(shifted, gamma.plus_rho()), (alpha, gamma))
        if m:
            counts[gamma] = m
    return BranchingTable.from_counts(alpha, counts)


def corollary_polytope_count(alpha: YoungWeight | Sequence[int], *, boundary: bool = False) -> int:
    """Lattice points gamma whose rho-shift lies in the rho-shifted kbar support.

    With ``boundary=False`` only points strictly inside count; for integer
    data this is the same as the closed inequality
    max_i(alpha_{i+1} - gamma_i) <= min_i(alpha_i - gamma_i).  With
    ``boundary=True`` the faces are included, and points where kbar
    vanishes get counted too.
    """
    alpha = _su_weight(alpha)
    poly = kbar_support(alpha.plus_rho())
    test = poly.contains if boundary else poly.interior
    return sum(
        1
        for gamma in dominant_gammas(alpha.rank - 1, alpha.parts[0] + 2)
        if test(gamma.plus_rho())
    )


def count_constituents(alpha: YoungWeight | Sequence[int]) -> int:
    """Number of distinct SU(n-1) irreps in the restriction of alpha."""
    return corollary_polytope_count(alpha, boundary=False)


def max_multiplicity(alpha: YoungWeight | Sequence[int]) -> int:
    """One plus the smallest Dynkin label of alpha."""
    alpha = _su_weight(alpha)
    return 1 + min(young_to_dynkin(alpha).labels)


def stretch_profile(
    alpha: YoungWeight | Sequence[int],
    gamma: YoungWeight | Sequence[int],
    s_max: int,
    offset: Sequence[int] | None = None,
) -> list[tuple[int, int]]:
    """br_{s alpha}(s gamma + offset) for s = 1..s_max, recomputed for every s."""
    alpha = _su_weight(alpha)
    gamma = gamma if isinstance(gamma, YoungWeight) else YoungWeight(gamma)
    if s_max < 1:
        raise ValueError("s_max must be at least 1")
    off = tuple(offset) if offset is not None else (0,) * gamma.rank
    if len(off) != gamma.rank:
        raise InvalidWeightError(f"offset must have rank {gamma.rank}")
    out = []
    for s in range(1, s_max + 1):
        g = YoungWeight(s * v + o for v, o in zip(gamma.parts, off))
        out.append((s, branching_coefficient(alpha.scaled(s), g)))
    return out


def multiplicity_pattern(alpha: YoungWeight | Sequence[int], s: int = 1) -> list[tuple[tuple[int, int], int]]:
    """Dynkin-labelled multiplicities of the SU(4) irrep s*alpha restricted to SU(3)."""
    alpha = _su_weight(alpha)
    if alpha.rank != 4:
        raise InvalidWeightError("multiplicity patterns are defined for SU(4) -> SU(3)")
    if s < 1:
        raise ValueError("s must be at least 1")
    table = branch_su(alpha.scaled(s))
    pts = [(tuple(young_to_dynkin(g).labels), m) for g, m in table]
    pts.sort()
    return pts


def level_sets(pattern: Iterable[tuple[tuple[int, ...], int]]) -> dict[int, set]:
    """{m: points with multiplicity >= m} for m = 1..max."""
    pattern = list(pattern)
    top = max((m for _, m in pattern), default=0)
    return {lvl: {p for p, m in pattern if m >= lvl} for lvl in range(1, top + 1)}


def is_nested(levels: Mapping[int, set]) -> bool:
    keys = sorted(levels)
    return all(levels[b] <= levels[a] for a, b in zip(keys, keys[1:]))
