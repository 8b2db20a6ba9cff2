"""Orbital integrals, Schur functions and the identities linking them.

Numerics are double precision complex.  The Schur-restriction oracle is
the exception: it works on integer coefficient arrays and is exact.
"""
from __future__ import annotations

import math
from collections import Counter
from itertools import combinations, permutations, product
from typing import Sequence

import numpy as np

from .branching import BranchingTable
from .errors import (
    DegenerateArgumentError,
    DimensionMismatchError,
    InternalConsistencyError,
    InvalidArgsError,
    InvalidWeightError,
)
from .kernels import perm_sign
from .weights import YoungWeight, su_normalize, vandermonde, weyl_dimension

__all__ = [
    "DEGENERACY_TOL",
    "SCHUR_FALLBACK_TOL",
    "hciz",
    "schur_poly",
    "schur_tableau_sum",
    "schur_branch_oracle",
    "weyl_denominator",
    "kirillov_rhs",
    "kirillov_check",
    "root_coordinates",
    "lattice_sum",
    "lattice_sum_check",
]

DEGENERACY_TOL = 1e-9
SCHUR_FALLBACK_TOL = 1e-8


def _superfactorial(n: int) -> int:
    return math.prod(math.factorial(p) for p in range(1, n))


def _min_gap(v: Sequence[complex]) -> float:
    return min((abs(a - b) for a, b in combinations(v, 2)), default=math.inf)


def hciz(alpha: Sequence[float], x: Sequence[complex]) -> complex:
    """Harish-Chandra-Itzykson-Zuber integral  int dU exp(tr U alpha U^+ X).

    ``alpha`` and ``x`` are the spectra of the two matrices; the result is
    normalized so that it tends to 1 as x -> 0.  Coincident entries in
    either argument are rejected (no confluent limits).
    """
    a = np.asarray(alpha, dtype=float)
    z = np.asarray(x, dtype=complex)
    n = a.size
    if z.size != n:
        raise DimensionMismatchError(f"alpha has rank {n}, x has rank {z.size}")
    if _min_gap(a.tolist()) < DEGENERACY_TOL or _min_gap(z.tolist()) < DEGENERACY_TOL:
        raise DegenerateArgumentError("hciz needs distinct alpha and distinct x")
    det = np.linalg.det(np.exp(np.outer(a, z)))
    return complex(_superfactorial(n) * det / (vandermonde(a.tolist()) * vandermonde(z.tolist())))


def schur_tableau_sum(lam: YoungWeight | Sequence[int], x: Sequence[complex]) -> complex:
    """s_lambda(x) as a sum over semistandard tableaux, peeled one variable at a time."""
    lam = tuple(lam)
    x = tuple(complex(v) for v in x)
    if len(lam) != len(x):
        raise DimensionMismatchError(f"lambda has {len(lam)} parts but x has {len(x)} entries")
    memo: dict[tuple[int, ...], complex] = {}

    def rec(mu: tuple[int, ...]) -> complex:
        k = len(mu)
        if k == 1:
            return x[0] ** mu[0]
        if mu in memo:
            return memo[mu]
        size, xk = sum(mu), x[k - 1]
        total = 0j
        ranges = [range(mu[i + 1], mu[i] + 1) for i in range(k - 1)]
        for nu in product(*ranges):
            total += xk ** (size - sum(nu)) * rec(nu)
        memo[mu] = total
        return total

    return rec(lam)


def schur_poly(lam: YoungWeight | Sequence[int], x: Sequence[complex]) -> complex:
    """Schur polynomial s_lambda(x_1..x_n).

    Uses the bialternant det(x_j^(lambda_i+n-i)) / det(x_j^(n-i)) and falls
    back to the tableau sum when the Vandermonde is below 1e-8 in modulus.
    """
    lam = tuple(lam)
    z = np.asarray(x, dtype=complex)
    n = len(lam)
    if z.size != n:
        raise DimensionMismatchError(f"lambda has {n} parts but x has {z.size} entries")
    den = vandermonde(z.tolist())
    if abs(den) < SCHUR_FALLBACK_TOL:
        return schur_tableau_sum(lam, z.tolist())
    exps = np.array([lam[i] + n - 1 - i for i in range(n)])
    num = np.linalg.det(z[None, :] ** exps[:, None])
    return complex(num / den)


def schur_branch_oracle(alpha: YoungWeight | Sequence[int]) -> BranchingTable:
    """SU(n) -> SU(n-1) branching from the Weyl character formula.

    Writes a_delta(x) s_alpha(x, 1) = a_{alpha+delta}(x, 1) / prod_i (x_i - 1)
    as an integer coefficient array in m = n-1 variables, reads off the
    coefficient of x^(mu+delta) for each strictly decreasing exponent, and
    groups the resulting U(n-1) constituents mu by their SU reduction.
    """
    alpha = alpha if isinstance(alpha, YoungWeight) else YoungWeight(alpha)
    if not alpha.is_su_normalized:
        raise InvalidWeightError(f"schur_branch_oracle needs an SU-normalized weight, got {alpha}")
    n = alpha.rank
    if n < 2:
        raise InvalidWeightError("branching needs rank n >= 2")
    m = n - 1
    exps = alpha.plus_rho()
    size = exps[0] + 1
    coeffs = np.zeros((size,) * m, dtype=np.int64)
    for w in permutations(range(n)):
        coeffs[tuple(exps[w[j]] for j in range(m))] += perm_sign(w)
    for axis in range(m):
        coeffs = -np.cumsum(coeffs, axis=axis)
        top = np.take(coeffs, size - 1, axis=axis)
        if np.any(top):
            raise InternalConsistencyError("alternant not divisible by (x_i - 1)")
    delta = np.arange(m - 1, -1, -1)
    counts: Counter = Counter()
    for idx in np.argwhere(coeffs):
        if m > 1 and not np.all(idx[:-1] > idx[1:]):
            continue
        c = int(coeffs[tuple(idx)])
        if c < 0:
            raise InternalConsistencyError(f"negative restriction coefficient at {idx}")
        mu = YoungWeight((idx - delta).tolist())
        counts[su_normalize(mu)] += c
    return BranchingTable.from_counts(alpha, counts)


def weyl_denominator(t: Sequence[float]) -> complex:
    """prod_{i<j} (e^{i(t_i-t_j)/2} - e^{-i(t_i-t_j)/2}) = prod_{i<j} 2i sin((t_i-t_j)/2)."""
    t = [float(v) for v in t]
    return complex(math.prod(2j * math.sin((a - b) / 2) for a, b in combinations(t, 2)))


def _check_torus_point(t: Sequence[float]) -> list[float]:
    t = [float(v) for v in t]
    scale = max(1.0, max(abs(v) for v in t))
    if abs(sum(t)) > 1e-12 * scale * len(t):
        raise InvalidArgsError(f"torus point must sum to zero, got sum {sum(t)!r}")
    if any(abs(math.sin((a - b) / 2)) < DEGENERACY_TOL for a, b in combinations(t, 2)):
        raise DegenerateArgumentError(f"torus point {t} is on a Weyl wall")
    return t


def kirillov_rhs(alpha: YoungWeight | Sequence[int], t: Sequence[float]) -> complex:
    """dim V_alpha * Delta(it) / hatDelta(e^{it}) * H(alpha + rho; it)."""
    alpha = alpha if isinstance(alpha, YoungWeight) else YoungWeight(alpha)
    t = _check_torus_point(t)
    it = [1j * v for v in t]
    return (
        weyl_dimension(alpha)
        * vandermonde(it)
        / weyl_denominator(t)
        * hciz(alpha.plus_rho(), it)
    )


def kirillov_check(alpha: YoungWeight | Sequence[int], t: Sequence[float]) -> float:
    """|chi_alpha(e^{it}) - Kirillov product| for a torus point t of SU(n)."""
    alpha = alpha if isinstance(alpha, YoungWeight) else YoungWeight(alpha)
    t = _check_torus_point(t)
    if len(t) != alpha.rank:
        raise DimensionMismatchError(f"t must have rank {alpha.rank}")
    lhs = schur_poly(alpha, np.exp(1j * np.asarray(t)))
    return abs(lhs - kirillov_rhs(alpha, t))


def root_coordinates(t: Sequence[float]) -> np.ndarray:
    """Coefficients a_j of (t, 0) on the simple roots e_j - e_{j+1}, j = 1..n-2."""
    t = np.asarray(t, dtype=float)
    return np.cumsum(t)[:-1]


def lattice_sum(t: Sequence[float], n: int, cutoff: int) -> complex:
    """Truncated i^{-(n-1)} hatD_n/hatD_{n-1} sum_delta D_{n-1}(t+d)/D_n((t+d,0)).

    ``t`` lives on the Cartan of SU(n-1) (n-1 entries summing to zero) and
    delta = 2 pi sum_j p_j alpha_j runs over |p_j| <= cutoff.
    """
    if n < 3:
        raise InvalidArgsError("the lattice sum needs n >= 3")
    t = np.asarray(_check_torus_point(t), dtype=float)
    if t.size != n - 1:
        raise DimensionMismatchError(f"t must have rank {n - 1}")
    if cutoff < 1:
        raise InvalidArgsError("cutoff must be positive")
    a = root_coordinates(t)
    walls = np.concatenate([a, np.diff(a)])
    if np.any(np.abs(np.sin(walls / 2)) < DEGENERACY_TOL):
        raise DegenerateArgumentError(f"t = {t.tolist()} sits on a lattice singularity")
    p = np.arange(-cutoff, cutoff + 1, dtype=float)
    grids = np.meshgrid(*([p] * (n - 2)), indexing="ij")
    shifted = [aj + 2 * np.pi * g for aj, g in zip(a, grids)]
    # (t+delta)_k = a_k - a_{k-1} with a_0 = a_{n-1} = 0, and
    # D_n((s,0)) = D_{n-1}(s) * prod_k s_k, so the ratio is 1 / prod_k s_k.
    padded = [np.zeros_like(grids[0])] + shifted + [np.zeros_like(grids[0])]
    prod = np.ones_like(grids[0])
    for k in range(1, n):
        prod = prod * (padded[k] - padded[k - 1])
    total = np.sum(1.0 / prod)
    pref = (1j) ** (-(n - 1)) * weyl_denominator(np.append(t, 0.0)) / weyl_denominator(t)
    return complex(pref * total)


def lattice_sum_check(t: Sequence[float], n: int, cutoff: int) -> float:
    return abs(lattice_sum(t, n, cutoff) - 1.0)
