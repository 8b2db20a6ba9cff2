"""Monte Carlo for the classical minor problem.

A Hermitian matrix with spectrum alpha is drawn uniformly on its unitary
orbit, its principal (n-1) x (n-1) minor is diagonalized, and the minor
spectra are compared with the exact density by a chi-square test.

Random numbers
--------------
All randomness comes from numpy's Philox4x64-10 counter generator keyed
by the user seed.  Sample ``i`` owns the raw 64-bit words
``[i*W, (i+1)*W)`` of that stream (``W`` fixed per matrix size), so a
sample does not depend on how the batch is chunked or how many threads
run.  Raw words become uniforms as ``(w >> 11) * 2**-53`` and pairs of
uniforms become a standard complex normal by Box-Muller, never through
platform normal samplers.
"""
from __future__ import annotations

import csv
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import IO, Sequence

import numpy as np
from scipy.stats import chi2

from .errors import (
    ConvergenceError,
    DegenerateSpectrumError,
    DimensionMismatchError,
    InternalConsistencyError,
    InvalidWeightError,
)
from .weights import vandermonde

__all__ = [
    "BLOCK_SIZE",
    "INTERLACING_TOL",
    "CounterStream",
    "box_muller",
    "haar_unitary",
    "haar_unitaries",
    "sample_orbit_point",
    "principal_minor",
    "hermitian_eigenvalues",
    "SampleBatch",
    "sample_minor_spectrum",
    "uniform_control_batch",
    "DensityReport",
    "density_test",
]

BLOCK_SIZE = 4096
INTERLACING_TOL = 1e-8
JACOBI_TOL = 1e-12
JACOBI_SWEEPS = 30


class CounterStream:
    """Fixed-width slices of a Philox stream, addressed by sample index."""

    def __init__(self, seed: int, words_per_sample: int):
        if seed < 0 or seed >= 2**64:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
        self.seed = int(seed)
        self.width = 4 * math.ceil(words_per_sample / 4)

    def raw(self, start: int, count: int) -> np.ndarray:
        bg = np.random.Philox(key=self.seed)
        bg.advance(start * self.width // 4)
        return bg.random_raw(count * self.width).reshape(count, self.width)

    def uniforms(self, start: int, count: int) -> np.ndarray:
        """Doubles in [0, 1), shape (count, width)."""
        return (self.raw(start, count) >> np.uint64(11)).astype(np.float64) * 2.0**-53


def box_muller(u1: np.ndarray, u2: np.ndarray) -> np.ndarray:
    """Standard complex normals (E|z|^2 = 1) from pairs of uniforms in [0, 1)."""
    r = np.sqrt(-np.log1p(-u1))
    return r * (np.cos(2 * np.pi * u2) + 1j * np.sin(2 * np.pi * u2))


def _haar_from_ginibre(z: np.ndarray) -> np.ndarray:
    q, r = np.linalg.qr(z)
    d = np.diagonal(r, axis1=-2, axis2=-1)
    return q * (d / np.abs(d))[..., None, :]


def haar_unitary(n: int, rng: np.random.Generator | int | None = None) -> np.ndarray:
    """One Haar-distributed n x n unitary (QR of a complex Ginibre matrix)."""
    if n < 1:
        raise ValueError("n must be positive")
    rng = np.random.default_rng(rng) if not isinstance(rng, np.random.Generator) else rng
    u = rng.random((2, n, n))
    return _haar_from_ginibre(box_muller(u[0], u[1]))


def haar_unitaries(n: int, seed: int, start: int, count: int) -> np.ndarray:
    """Unitaries for sample indices start..start+count-1, shape (count, n, n)."""
    stream = CounterStream(seed, 2 * n * n)
    u = stream.uniforms(start, count)[:, : 2 * n * n]
    z = box_muller(u[:, 0::2], u[:, 1::2]).reshape(count, n, n)
    return _haar_from_ginibre(z)


def _orbit(alpha: np.ndarray, u: np.ndarray) -> np.ndarray:
    a = (u * alpha) @ np.conj(np.swapaxes(u, -1, -2))
    return 0.5 * (a + np.conj(np.swapaxes(a, -1, -2)))


def sample_orbit_point(alpha: Sequence[float], rng: np.random.Generator | int | None = None) -> np.ndarray:
    """U diag(alpha) U^+ for a Haar-random U."""
    a = np.asarray(alpha, dtype=float)
    return _orbit(a, haar_unitary(a.size, rng))


def principal_minor(a: np.ndarray, k: int | None = None) -> np.ndarray:
    """Delete row and column k (default: the last) of a matrix or stack of matrices."""
    a = np.asarray(a)
    n = a.shape[-1]
    if n < 2:
        raise DimensionMismatchError("a principal minor needs n >= 2")
    k = n - 1 if k is None else k
    if not 0 <= k < n:
        raise IndexError(f"minor index {k} out of range for n = {n}")
    return np.delete(np.delete(a, k, axis=-1), k, axis=-2)


def hermitian_eigenvalues(b: np.ndarray, tol: float = JACOBI_TOL, max_sweeps: int = JACOBI_SWEEPS) -> np.ndarray:
    """Descending eigenvalues by cyclic complex Jacobi rotations.

    Accepts one matrix or a stack (..., m, m).  Each rotation first strips
    the phase of the pivot a_pq, then applies the real symmetric Jacobi
    rotation.  Sweeps stop once the off-diagonal Frobenius norm of every
    matrix is at most ``tol`` times its full norm.
    """
    a = np.array(b, dtype=complex, copy=True)
    single = a.ndim == 2
    if single:
        a = a[None]
    m = a.shape[-1]
    if a.shape[-2] != m:
        raise DimensionMismatchError("matrix must be square")
    scale = np.sqrt(np.sum(np.abs(a) ** 2, axis=(-2, -1)))
    offmask = ~np.eye(m, dtype=bool)

    def converged() -> bool:
        off = np.sqrt(np.sum(np.abs(a[..., offmask]) ** 2, axis=-1))
        return bool(np.all(off <= tol * scale))

    for _ in range(max_sweeps + 1):
        if converged():
            break
        for p in range(m - 1):
            for q in range(p + 1, m):
                apq = a[..., p, q]
                mag = np.abs(apq)
                active = mag > 0
                safe = np.where(active, mag, 1.0)
                w = np.where(active, apq / safe, 1.0)
                tau = (a[..., q, q].real - a[..., p, p].real) / (2 * safe)
                sgn = np.where(tau >= 0, 1.0, -1.0)
                t = np.where(active, sgn / (np.abs(tau) + np.sqrt(1 + tau * tau)), 0.0)
                c = 1 / np.sqrt(1 + t * t)
                s = t * c
                wc = np.conj(w)
                colp = a[..., :, p].copy()
                colq = a[..., :, q].copy()
                a[..., :, p] = c[..., None] * colp - (s * wc)[..., None] * colq
                a[..., :, q] = s[..., None] * colp + (c * wc)[..., None] * colq
                rowp = a[..., p, :].copy()
                rowq = a[..., q, :].copy()
                a[..., p, :] = c[..., None] * rowp - (s * w)[..., None] * rowq
                a[..., q, :] = s[..., None] * rowp + (c * w)[..., None] * rowq
    else:
        raise ConvergenceError(f"Jacobi did not converge in {max_sweeps} sweeps")
    ev = -np.sort(-np.real(np.diagonal(a, axis1=-2, axis2=-1)), axis=-1)
    return ev[0] if single else ev


@dataclass
class SampleBatch:
    alpha: tuple[float, ...]
    seed: int
    count: int
    betas: np.ndarray = field(repr=False)
    minor_index: int | None = None

    def write_csv(self, fh: IO[str]) -> None:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow([f"beta_{i + 1}" for i in range(self.betas.shape[1])])
        for row in self.betas:
            w.writerow([format(float(v), ".12g") for v in row])


def _spectrum(alpha: Sequence[float]) -> np.ndarray:
    a = np.asarray(alpha, dtype=float)
    if a.ndim != 1 or a.size < 2:
        raise InvalidWeightError("alpha must be a spectrum of rank n >= 2")
    if np.any(np.diff(a) > 0):
        raise InvalidWeightError(f"alpha must be weakly decreasing: {a.tolist()}")
    return a


def _minor_block(a: np.ndarray, seed: int, start: int, count: int, k: int | None) -> np.ndarray:
    u = haar_unitaries(a.size, seed, start, count)
    return hermitian_eigenvalues(principal_minor(_orbit(a, u), k))


def _check_interlacing(a: np.ndarray, betas: np.ndarray) -> None:
    tol = INTERLACING_TOL * max(1.0, float(np.max(np.abs(a))))
    bad = (betas > a[:-1] + tol) | (betas < a[1:] - tol)
    if np.any(bad):
        raise InternalConsistencyError(f"{int(np.any(bad, axis=1).sum())} samples fail interlacing")


def sample_minor_spectrum(
    alpha: Sequence[float],
    count: int,
    seed: int,
    *,
    minor_index: int | None = None,
    workers: int = 1,
) -> SampleBatch:
    """Spectra of the principal minor of ``count`` random points of the orbit of alpha.

    Blocks of BLOCK_SIZE samples are the unit of work; ``workers`` only
    changes scheduling, never the output.
    """
    a = _spectrum(alpha)
    if count < 1:
        raise ValueError("count must be at least 1")
    starts = range(0, count, BLOCK_SIZE)

    def job(s: int) -> np.ndarray:
        return _minor_block(a, seed, s, min(BLOCK_SIZE, count - s), minor_index)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            parts = list(ex.map(job, starts))
    else:
        parts = [job(s) for s in starts]
    betas = np.concatenate(parts, axis=0)
    _check_interlacing(a, betas)
    return SampleBatch(tuple(a.tolist()), seed, count, betas, minor_index)


def uniform_control_batch(alpha: Sequence[float], count: int, seed: int) -> SampleBatch:
    """Points drawn uniformly on the interlacing box, as a negative control."""
    a = _spectrum(alpha)
    stream = CounterStream(seed, a.size - 1)
    u = stream.uniforms(0, count)[:, : a.size - 1]
    betas = a[1:] + u * (a[:-1] - a[1:])
    return SampleBatch(tuple(a.tolist()), seed, count, betas)


@dataclass
class DensityReport:
    statistic: float
    dof: int
    threshold: float
    p_value: float
    passed: bool
    samples: int
    cells: int
    merged_cells: int
    quantile: float = 0.999

    def to_json(self) -> dict:
        return {
            "statistic": self.statistic,
            "dof": self.dof,
            "threshold": self.threshold,
            "p_value": self.p_value,
            "quantile": self.quantile,
            "samples": self.samples,
            "cells": self.cells,
            "merged_cells": self.merged_cells,
            "passed": self.passed,
        }


def _cell_probabilities(a: np.ndarray, bins: int) -> np.ndarray:
    """Probability of each cell of the bins^(n-1) grid on the interlacing box.

    The density is a polynomial of degree m-1 in each coordinate, so an
    m-point Gauss-Legendre rule per axis integrates it exactly.
    """
    m = a.size - 1
    lo, hi = a[1:], a[:-1]
    nodes, weights = np.polynomial.legendre.leggauss(max(2, m))
    k = nodes.size
    # axis 2i indexes the cell along coordinate i, axis 2i+1 the node inside it
    pts, wts = [], 1.0
    for i in range(m):
        h = (hi[i] - lo[i]) / bins
        x = lo[i] + h * np.arange(bins)[:, None] + h * (nodes[None, :] + 1) / 2
        shape = [1] * (2 * m)
        shape[2 * i], shape[2 * i + 1] = bins, k
        pts.append(x.reshape(shape))
        wts = wts * np.broadcast_to(h * weights / 2, (bins, k)).reshape(shape)
    dens = 1.0
    for i in range(m):
        for j in range(i + 1, m):
            dens = dens * (pts[i] - pts[j])
    integrand = math.factorial(m) / vandermonde(a.tolist()) * dens * wts
    integrand = np.broadcast_to(integrand, tuple(v for _ in range(m) for v in (bins, k)))
    return np.sum(integrand, axis=tuple(range(1, 2 * m, 2)))


def density_test(batch: SampleBatch, bins: int = 10, quantile: float = 0.999) -> DensityReport:
    """Chi-square goodness of fit of a batch against the exact minor-spectrum density.

    Cells of a bins^(n-1) grid over the interlacing box whose expected
    count is below 5 are pooled into one cell (which is itself folded into
    the smallest remaining cell if still below 5).
    """
    a = np.asarray(batch.alpha, dtype=float)
    if np.any(np.diff(a) == 0):
        raise DegenerateSpectrumError(f"alpha has repeated entries: {a.tolist()}")
    betas = np.asarray(batch.betas, dtype=float)
    n_samples, m = betas.shape
    if n_samples == 0:
        raise ValueError("empty batch")
    if m != a.size - 1:
        raise DimensionMismatchError("batch rank does not match alpha")
    lo, hi = a[1:], a[:-1]
    idx = np.floor((betas - lo) / (hi - lo) * bins).astype(int)
    idx = np.clip(idx, 0, bins - 1)
    flat = np.ravel_multi_index(tuple(idx.T), (bins,) * m)
    observed = np.bincount(flat, minlength=bins**m).astype(float)
    expected = n_samples * _cell_probabilities(a, bins).ravel()

    small = expected < 5
    obs = list(observed[~small])
    exp = list(expected[~small])
    merged = int(small.sum())
    if merged:
        po, pe = float(observed[small].sum()), float(expected[small].sum())
        if pe >= 5 or not exp:
            obs.append(po)
            exp.append(pe)
        else:
            j = int(np.argmin(exp))
            obs[j] += po
            exp[j] += pe
    obs_a, exp_a = np.asarray(obs), np.asarray(exp)
    with np.errstate(divide="ignore"):
        stat = float(np.sum((obs_a - exp_a) ** 2 / exp_a))
    dof = max(1, len(exp_a) - 1)
    thr = float(chi2.ppf(quantile, dof))
    return DensityReport(
        statistic=stat,
        dof=dof,
        threshold=thr,
        p_value=float(chi2.sf(stat, dof)),
        passed=stat <= thr,
        samples=n_samples,
        cells=len(exp_a),
        merged_cells=merged,
        quantile=quantile,
    )
