"""Verification suites behind ``minorbranch verify``.

Each suite returns a JSON-ready report::

    {"suite": name, "params": {...}, "checks": [{"name", "value",
     "tolerance", "passed"}, ...], "passed": bool}
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from itertools import combinations_with_replacement
from typing import Iterator, Sequence

import numpy as np

from .branching import branch_su, corollary_polytope_count, count_constituents, max_multiplicity
from .gt import branch_su_oracle, gt_count
from .minormc import INTERLACING_TOL, density_test, sample_minor_spectrum, uniform_control_batch
from .spectral import kirillov_check, lattice_sum_check, schur_branch_oracle
from .weights import YoungWeight, weyl_dimension

__all__ = [
    "KIRILLOV_TOL",
    "LATTICE_TOL",
    "su_weights",
    "check_weight",
    "verify_oracles",
    "random_torus_point",
    "verify_kirillov",
    "verify_lattice_sum",
    "interlacing_fraction",
    "verify_minor",
]

KIRILLOV_TOL = 1e-8
UNIFORMITY_TOL = 0.005
LATTICE_TOL = {3: (200, 1e-3), 4: (100, 1e-2)}
DEFAULT_LATTICE_T = {3: (0.9, -0.9), 4: (0.9, 0.4, -1.3)}


def _check(name: str, value, tolerance, passed: bool) -> dict:
    return {"name": name, "value": value, "tolerance": tolerance, "passed": bool(passed)}


def _report(suite: str, params: dict, checks: list[dict]) -> dict:
    return {
        "suite": suite,
        "params": params,
        "checks": checks,
        "passed": all(c["passed"] for c in checks),
    }


def su_weights(n: int, max_size: int) -> Iterator[YoungWeight]:
    """Every SU-normalized weight of rank n with at most max_size boxes."""
    for size in range(max_size + 1):
        for head in combinations_with_replacement(range(size, -1, -1), n - 1):
            if sum(head) == size:
                yield YoungWeight(head + (0,))


def check_weight(alpha: YoungWeight) -> dict:
    """Every oracle and corollary comparison for one weight."""
    table = branch_su(alpha)
    dim = weyl_dimension(alpha)
    return {
        "alpha": list(alpha.parts),
        "gt_match": table == branch_su_oracle(alpha),
        "schur_match": table == schur_branch_oracle(alpha),
        "dim_sum": table.dimension_sum() == dim,
        "gt_count": gt_count(alpha) == dim,
        "count": count_constituents(alpha) == len(table),
        "max_mult": max_multiplicity(alpha) == table.max_multiplicity,
        "closed_excess": corollary_polytope_count(alpha, boundary=True) - len(table),
    }


def verify_oracles(ns: Sequence[int] = (3, 4, 5), max_size: int = 12, workers: int = 1) -> dict:
    """Triple-oracle sweep plus both corollaries over all small weights."""
    alphas = [a for n in ns for a in su_weights(n, max_size)]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            rows = list(ex.map(check_weight, alphas))
    else:
        rows = [check_weight(a) for a in alphas]
    checks = []
    for key, label in [
        ("gt_match", "kbar table equals GT interlacing oracle"),
        ("schur_match", "kbar table equals Schur restriction oracle"),
        ("dim_sum", "sum of mult*dim equals dim alpha"),
        ("gt_count", "GT pattern count equals Weyl dimension"),
        ("count", "entry count equals polytope lattice-point count"),
        ("max_mult", "max multiplicity equals 1 + min Dynkin label"),
    ]:
        bad = [r["alpha"] for r in rows if not r[key]]
        checks.append(_check(label, len(bad), 0, not bad))
    excess = [r for r in rows if r["closed_excess"] > 0]
    report = _report(
        "oracles",
        {"n": list(ns), "max_size": max_size, "weights": len(rows)},
        checks,
    )
    # boundary lattice points of the closed shifted polytope carry kbar = 0;
    # reported for information, not part of the verdict
    report["closed_polytope_excess"] = {
        "weights_affected": len(excess),
        "max_excess": max((r["closed_excess"] for r in excess), default=0),
    }
    return report


def random_torus_point(rng: np.random.Generator, n: int, margin: float = 0.2) -> np.ndarray:
    """Uniform t on the SU(n) Cartan with all |2 sin((t_i-t_j)/2)| >= margin."""
    while True:
        t = rng.uniform(-math.pi, math.pi, size=n)
        t = t - t.mean()
        gaps = [abs(2 * math.sin((a - b) / 2)) for i, a in enumerate(t) for b in t[i + 1:]]
        if min(gaps) >= margin:
            return t


def _random_weight(rng: np.random.Generator, n: int, max_part: int) -> YoungWeight:
    head = sorted(rng.integers(0, max_part + 1, size=n - 1).tolist(), reverse=True)
    return YoungWeight(head + [0])


def verify_kirillov(
    trials: int = 100,
    seed: int = 7,
    ns: Sequence[int] = (3, 4),
    max_part: int = 6,
    alpha: YoungWeight | None = None,
) -> dict:
    """Kirillov residuals at random torus points; random weights unless alpha is fixed."""
    rng = np.random.default_rng(seed)
    if alpha is not None:
        ns = (alpha.rank,)
    worst = {n: 0.0 for n in ns}
    for k in range(trials):
        n = ns[k % len(ns)]
        a = alpha if alpha is not None else _random_weight(rng, n, max_part)
        t = random_torus_point(rng, n)
        worst[n] = max(worst[n], kirillov_check(a, t))
    checks = [
        _check(f"max Kirillov residual n={n}", worst[n], KIRILLOV_TOL, worst[n] <= KIRILLOV_TOL)
        for n in ns
    ]
    params = {"trials": trials, "seed": seed, "n": list(ns)}
    if alpha is not None:
        params["alpha"] = list(alpha.parts)
    return _report("kirillov", params, checks)


def verify_lattice_sum(n: int = 3, cutoff: int | None = None, t: Sequence[float] | None = None) -> dict:
    default_cut, tol = LATTICE_TOL.get(n, (100, None))
    cutoff = default_cut if cutoff is None else cutoff
    t = DEFAULT_LATTICE_T.get(n) if t is None else tuple(t)
    if t is None:
        raise ValueError(f"no default torus point for n = {n}; pass t explicitly")
    r1 = lattice_sum_check(t, n, cutoff)
    r2 = lattice_sum_check(t, n, 2 * cutoff)
    checks = [_check("residual decreases when the cutoff doubles", r2, r1, r2 < r1)]
    if tol is not None:
        checks.insert(0, _check(f"residual at cutoff {cutoff}", r1, tol, r1 <= tol))
    return _report("lattice-sum", {"n": n, "cutoff": cutoff, "t": list(t)}, checks)


def interlacing_fraction(batch) -> float:
    a = np.asarray(batch.alpha, dtype=float)
    tol = INTERLACING_TOL * max(1.0, float(np.max(np.abs(a))))
    ok = (batch.betas <= a[:-1] + tol) & (batch.betas >= a[1:] - tol)
    return float(np.all(ok, axis=1).mean())


def verify_minor(
    alpha: Sequence[float] = (4.0, 1.0, 0.0),
    samples: int = 200_000,
    seed: int = 42,
    bins: int = 10,
    workers: int = 1,
    uniformity_samples: int = 100_000,
) -> dict:
    batch = sample_minor_spectrum(alpha, samples, seed, workers=workers)
    test = density_test(batch, bins)
    control = density_test(uniform_control_batch(alpha, samples, seed), bins)
    frac = interlacing_fraction(batch)
    pair = sample_minor_spectrum((1.0, 0.0), uniformity_samples, seed, workers=workers)
    dev = abs(float(pair.betas.mean()) - 0.5)
    checks = [
        _check("fraction of samples interlacing within 1e-8", frac, 1.0, frac == 1.0),
        _check("chi-square statistic vs 99.9% quantile", test.statistic, test.threshold, test.passed),
        _check("uniform control rejected", control.statistic, control.threshold, not control.passed),
        _check("n=2 minor mean deviation from 1/2", dev, UNIFORMITY_TOL, dev <= UNIFORMITY_TOL),
    ]
    return _report(
        "minor",
        {"alpha": [float(v) for v in alpha], "samples": samples, "seed": seed, "bins": bins},
        checks,
    )
