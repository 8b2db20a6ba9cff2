"""Classical interlacing kernels.

``K(alpha; beta)`` is the indicator of the interlacing polytope scaled by
(n-1)!, and ``kbar(alpha; gamma)`` is its integral over the overall
position beta_{n-1} of a minor spectrum whose spacings gamma are fixed.
The interval-length formula in :func:`kbar` is the workhorse; the n = 3
and n = 4 absolute-value formulas and the sign-determinant integral of
:func:`kbar_signed` are independent evaluations used to cross-check it.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import permutations
from typing import Sequence

from .errors import (
    DegenerateSpectrumError,
    DimensionMismatchError,
    InvalidArgsError,
    InvalidWeightError,
    NonGenericInputError,
)
from .weights import vandermonde

__all__ = [
    "REAL_SLACK",
    "sign",
    "interlaces",
    "baryshnikov_pdf",
    "k_sign_det",
    "kbar",
    "kbar_signed",
    "kbar3_closed",
    "kbar4_closed",
    "SupportPolytope",
    "kbar_support",
    "kbar_max",
    "int_det",
    "perm_sign",
]

REAL_SLACK = 1e-12


def sign(x) -> int:
    """Sign function with sign(0) = 0."""
    return int(x > 0) - int(x < 0)


def perm_sign(p: Sequence[int]) -> int:
    s = 1
    for i in range(len(p)):
        for j in range(i + 1, len(p)):
            if p[i] > p[j]:
                s = -s
    return s


def int_det(rows: list[list[int]]) -> int:
    """Exact determinant of an integer matrix (fraction-free Bareiss)."""
    m = [list(r) for r in rows]
    n = len(m)
    if n == 0:
        return 1
    s, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    s = -s
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return s * m[n - 1][n - 1]


def _slack(*vecs) -> float:
    for v in vecs:
        for x in v:
            if not float(x).is_integer():
                return REAL_SLACK
    return 0.0


def _decreasing(x: Sequence, name: str) -> tuple:
    x = tuple(x)
    if any(x[i] < x[i + 1] for i in range(len(x) - 1)):
        raise InvalidWeightError(f"{name} must be weakly decreasing: {x}")
    return x


def _ranks(alpha: tuple, beta: tuple) -> None:
    if len(beta) != len(alpha) - 1:
        raise DimensionMismatchError(
            f"expected a rank {len(alpha) - 1} argument, got rank {len(beta)}"
        )


def interlaces(alpha: Sequence[float], beta: Sequence[float]) -> bool:
    """alpha_1 >= beta_1 >= alpha_2 >= ... >= beta_{n-1} >= alpha_n."""
    alpha = _decreasing(alpha, "alpha")
    beta = tuple(beta)
    _ranks(alpha, beta)
    tol = _slack(alpha, beta)
    return all(
        alpha[i] + tol >= beta[i] >= alpha[i + 1] - tol for i in range(len(beta))
    )


def baryshnikov_pdf(alpha: Sequence[float], beta: Sequence[float]) -> float:
    """Density of the minor spectrum beta given the spectrum alpha.

    Equals (n-1)! Delta(beta) / Delta(alpha) on the interlacing polytope
    and 0 outside it.
    """
    alpha = _decreasing(alpha, "alpha")
    beta = tuple(beta)
    _ranks(alpha, beta)
    if len(set(alpha)) != len(alpha):
        raise DegenerateSpectrumError(f"alpha has repeated entries: {alpha}")
    if not interlaces(alpha, beta):
        return 0.0
    n = len(alpha)
    return math.factorial(n - 1) * vandermonde(beta) / vandermonde(alpha)


def k_sign_det(alpha: Sequence[float], beta: Sequence[float]) -> int:
    """(n-1)!/2^(n-1) det(sign(alpha_i - beta_j) - sign(alpha_n - beta_j)).

    The determinant is computed in exact integer arithmetic.  Inputs where
    some alpha_i equals some beta_j are rejected.
    """
    alpha = _decreasing(alpha, "alpha")
    beta = _decreasing(beta, "beta")
    _ranks(alpha, beta)
    if any(a == b for a in alpha for b in beta):
        raise NonGenericInputError(f"tie between alpha={alpha} and beta={beta}")
    n = len(alpha)
    last = alpha[-1]
    mat = [[sign(alpha[i] - b) - sign(last - b) for b in beta] for i in range(n - 1)]
    d = int_det(mat)
    num = math.factorial(n - 1) * d
    den = 2 ** (n - 1)
    assert num % den == 0, (alpha, beta, d)
    return num // den


def _kbar_args(alpha: Sequence[float], gamma: Sequence[float]) -> tuple[tuple, tuple]:
    alpha, gamma = tuple(alpha), tuple(gamma)
    if len(alpha) < 2:
        raise InvalidArgsError("kbar needs n >= 2")
    if len(gamma) != len(alpha) - 1:
        raise InvalidArgsError(f"gamma must have rank {len(alpha) - 1}, got {len(gamma)}")
    if alpha[-1] != 0 or gamma[-1] != 0:
        raise InvalidArgsError(
            f"kbar expects alpha_n = 0 and gamma_(n-1) = 0, got {alpha}, {gamma}"
        )
    if any(alpha[i] < alpha[i + 1] for i in range(len(alpha) - 1)):
        raise InvalidArgsError(f"alpha must be weakly decreasing: {alpha}")
    if any(gamma[i] < gamma[i + 1] for i in range(len(gamma) - 1)):
        raise InvalidArgsError(f"gamma must be weakly decreasing: {gamma}")
    return alpha, gamma


def _interval(alpha: tuple, gamma: tuple):
    lo = max(alpha[i + 1] - g for i, g in enumerate(gamma))
    hi = min(alpha[i] - g for i, g in enumerate(gamma))
    return lo, hi


def kbar(alpha: Sequence[float], gamma: Sequence[float]):
    """Length of the set of beta_{n-1} for which gamma + beta_{n-1} interlaces alpha.

    Integer inputs give an exact integer result.
    """
    alpha, gamma = _kbar_args(alpha, gamma)
    lo, hi = _interval(alpha, gamma)
    return max(0, hi - lo)


def kbar_signed(alpha: Sequence[float], gamma: Sequence[float]) -> float:
    """Antisymmetric extension of kbar to unordered arguments.

    Integrates the n x n sign determinant [sign(alpha_i - gamma_j - t) | 1]
    over t, divided by 2^(n-1).  The integrand is piecewise constant with
    breakpoints alpha_i - gamma_j, so the integral is a finite sum.  No
    ordering or normalization is required; on the dominant sector the
    result equals :func:`kbar`.
    """
    alpha, gamma = tuple(alpha), tuple(gamma)
    n = len(alpha)
    if len(gamma) != n - 1:
        raise DimensionMismatchError(f"gamma must have rank {n - 1}, got {len(gamma)}")
    cuts = sorted({a - g for a in alpha for g in gamma})
    total = 0.0
    for left, right in zip(cuts, cuts[1:]):
        mid = 0.5 * (left + right)
        mat = [[sign(a - g - mid) for g in gamma] + [1] for a in alpha]
        d = int_det(mat)
        if d:
            total += d * (right - left)
    return total / 2 ** (n - 1)


def kbar3_closed(alpha: Sequence[float], gamma1: float) -> float:
    """Absolute-value closed form of kbar for n = 3; odd in gamma1."""
    alpha = tuple(alpha)
    if len(alpha) != 3 or alpha[2] != 0:
        raise InvalidArgsError(f"kbar3_closed expects (a1, a2, 0), got {alpha}")
    a1, a2 = alpha[0], alpha[1]

    def half(g):
        return 0.5 * (abs(a1 - g) - abs(a1 - a2 - g) - abs(a2 - g))

    return half(gamma1) - half(-gamma1)


def _psi4(a: Sequence[float], g: Sequence[float]) -> float:
    return sign(a[0] - g[0]) * (
        abs(a[1] - g[1])
        - abs(a[2] - g[1])
        - abs(a[0] - a[1] - g[0] + g[1])
        + abs(a[0] - a[2] - g[0] + g[1])
    )


_S4 = [(w, perm_sign(w)) for w in permutations(range(4))]


def kbar4_closed(alpha: Sequence[float], gamma: Sequence[float]) -> float:
    """Weyl-alternated closed form of kbar for n = 4."""
    alpha, gamma = tuple(alpha), tuple(gamma)
    if len(alpha) != 4 or len(gamma) != 3 or alpha[3] != 0 or gamma[2] != 0:
        raise InvalidArgsError(
            f"kbar4_closed expects (a1,a2,a3,0), (g1,g2,0); got {alpha}, {gamma}"
        )
    total = 0.0
    for w, eps in _S4:
        wa = [alpha[w[i]] - alpha[w[3]] for i in range(4)]
        total += eps * _psi4(wa, gamma)
    return total / 8


@dataclass(frozen=True)
class SupportPolytope:
    """Support of kbar(alpha; .) inside the dominant cone of gamma.

    gamma belongs to it iff some beta_{n-1} makes gamma + beta_{n-1} interlace
    alpha, i.e. max_i(alpha_{i+1} - gamma_i) <= min_i(alpha_i - gamma_i).
    """

    alpha: tuple

    @property
    def rank(self) -> int:
        return len(self.alpha) - 1

    def _gap(self, gamma: Sequence[float]):
        gamma = tuple(gamma)
        if len(gamma) != self.rank:
            raise DimensionMismatchError(f"gamma must have rank {self.rank}")
        lo, hi = _interval(self.alpha, gamma)
        return hi - lo, _slack(self.alpha, gamma)

    def contains(self, gamma: Sequence[float]) -> bool:
        gap, tol = self._gap(gamma)
        return gap >= -tol

    def interior(self, gamma: Sequence[float]) -> bool:
        gap, tol = self._gap(gamma)
        return gap > tol

    def inequalities(self) -> list[dict]:
        """H-representation in the variables gamma_1..gamma_{n-1}.

        Each dict reads ``sum(coeffs[k] * gamma_k) <= rhs``; the dominance
        and gamma_{n-1} = 0 constraints are listed last.
        """
        a, m = self.alpha, self.rank
        rows = []
        for i in range(m):
            for j in range(m):
                if i == j:
                    continue
                c = [0] * m
                c[j] += 1
                c[i] -= 1
                rows.append({"coeffs": c, "rhs": a[j] - a[i + 1]})
        for i in range(m - 1):
            c = [0] * m
            c[i], c[i + 1] = -1, 1
            rows.append({"coeffs": c, "rhs": 0})
        c = [0] * m
        c[-1] = 1
        rows.append({"coeffs": c, "rhs": 0})
        c = [0] * m
        c[-1] = -1
        rows.append({"coeffs": c, "rhs": 0})
        return rows


def kbar_support(alpha: Sequence[float]) -> SupportPolytope:
    alpha = tuple(alpha)
    if len(alpha) < 2 or alpha[-1] != 0:
        raise InvalidArgsError(f"support expects alpha_n = 0, got {alpha}")
    _decreasing(alpha, "alpha")
    return SupportPolytope(alpha)


def kbar_max(alpha: Sequence[float]):
    """Largest value of kbar(alpha; .): the smallest consecutive spacing of alpha."""
    alpha = tuple(alpha)
    if len(alpha) < 2 or alpha[-1] != 0:
        raise InvalidArgsError(f"kbar_max expects alpha_n = 0, got {alpha}")
    _decreasing(alpha, "alpha")
    return min(alpha[i] - alpha[i + 1] for i in range(len(alpha) - 1))
