"""Drivers for the conditioning and accuracy experiments.

Each driver is deterministic given its seed: trial ``t`` derives its own
generator from ``(seed, ...)`` tuples, so results are independent of worker
count and execution order.  Rows come back ordered by trial index.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .analysis import ConditioningRecord, eig_condition, growth_rate, root_condition
from .generators import clustered_conic, devastating, perturbed_devastating, random_dense
from .linalg import DEFAULT_TOL, Tolerances
from .poly import Polynomial, PolySystem
from .reduction import MethodConfig
from .solver import reduce_and_ms, solve

PERTURB_DIMS = (2, 3, 4)


def _map_ordered(fn, items, workers: int = 1):
    if workers <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def unit_scaled(system: PolySystem) -> PolySystem:
    """Each polynomial divided by its coefficient 2-norm.

    Roots are unchanged; absolute condition numbers become comparable
    across systems with different coefficient scales.
    """
    polys = []
    for p in system.polys:
        nrm = float(np.linalg.norm([abs(c) for c in p.terms.values()]))
        polys.append(Polynomial(p.n, {e: c / nrm for e, c in p.terms.items()}))
    return PolySystem(polys)


def condition_at_root(system, z, *, cfg=None, tol: Tolerances = DEFAULT_TOL):
    """Root/eigenvalue condition numbers at (or near) a target root.

    Solves the system, picks the returned root nearest ``z`` (or the origin
    when ``z`` is None), and measures the eigenvalue condition on the first
    multiplication matrix at that root's first coordinate.  Returns
    ``(root, eigen_cond, root_cond)``.
    """
    cfg = cfg or MethodConfig()
    _, ms, result = reduce_and_ms(system, cfg, tol)
    if z is None:
        i = int(np.argmin(np.max(np.abs(result.roots), axis=1)))
    else:
        i = int(np.argmin(np.linalg.norm(result.roots - np.asarray(z), axis=1)))
    z_found = result.roots[i]
    kappa_eig = eig_condition(ms.mats[0], z_found[0])
    kappa_root = root_condition(system, z_found)
    return z_found, kappa_eig, kappa_root


def devastating_records(eps, dims, seed, tol: Tolerances = DEFAULT_TOL):
    """One conditioning record per dimension for the near-origin root."""
    records = []
    for n in dims:
        system = devastating(n, eps, seed=(seed, n))
        z, ke, kr = condition_at_root(system, None, cfg=MethodConfig(seed=seed), tol=tol)
        records.append(
            ConditioningRecord(
                n=n,
                root=tuple(z),
                eigenvalue=z[0],
                root_cond=kr,
                eig_cond=ke,
                eps=eps,
                seed=seed,
            )
        )
    return records


def devastating_growth(eps, dims, seed, tol: Tolerances = DEFAULT_TOL):
    """Records plus the fitted conditioning-ratio growth rate across dims."""
    records = devastating_records(eps, dims, seed, tol)
    g = growth_rate([r.n for r in records], [r.cr for r in records])
    return records, g


def perturb_growth(
    eps,
    deltas,
    num_seeds: int,
    seed: int = 0,
    dims=PERTURB_DIMS,
    workers: int = 1,
    tol: Tolerances = DEFAULT_TOL,
):
    """Perturbed family: growth-rate fits per noise level.

    Returns ``(records, fits)`` where ``fits[delta]`` is the list of fitted
    growth rates, one per seed.
    """

    def one(task):
        delta, s = task
        recs = []
        for n in dims:
            system = perturbed_devastating(n, eps, delta, seed=(seed, s, n))
            z, ke, kr = condition_at_root(system, None, cfg=MethodConfig(seed=s), tol=tol)
            recs.append(
                ConditioningRecord(
                    n=n,
                    root=tuple(z),
                    eigenvalue=z[0],
                    root_cond=kr,
                    eig_cond=ke,
                    eps=eps,
                    delta=delta,
                    seed=s,
                )
            )
        g = growth_rate([r.n for r in recs], [r.cr for r in recs])
        return recs, g

    tasks = [(delta, s) for delta in deltas for s in range(num_seeds)]
    results = _map_ordered(one, tasks, workers)
    records, fits = [], {delta: [] for delta in deltas}
    for (delta, _), (recs, g) in zip(tasks, results):
        records.extend(recs)
        fits[delta].append(g)
    return records, fits


def cluster_records(
    ks,
    alpha: float,
    num_seeds: int,
    n: int = 4,
    seed: int = 0,
    workers: int = 1,
    tol: Tolerances = DEFAULT_TOL,
):
    """Clustered-conic family: conditioning at the prescribed primary root.

    Systems are unit-scaled before measuring so absolute root conditions are
    comparable across cluster sizes; the root condition is evaluated at the
    exactly known primary root (the solver's nearby root is smeared by the
    very eigenvalue ill-conditioning under study).
    """

    def one(task):
        k, s = task
        system, info = clustered_conic(n, k, alpha, seed=(seed, k, s))
        system = unit_scaled(system)
        z1 = info["roots"][0]
        _, ms, _ = reduce_and_ms(system, MethodConfig(seed=s), tol)
        ke = eig_condition(ms.mats[0], z1[0])
        kr = root_condition(system, z1)
        return ConditioningRecord(
            n=n,
            root=tuple(z1),
            eigenvalue=z1[0],
            root_cond=kr,
            eig_cond=ke,
            alpha=alpha,
            k=k,
            seed=s,
        )

    tasks = [(k, s) for k in ks for s in range(num_seeds)]
    return _map_ordered(one, tasks, workers)


@dataclass
class MethodCompareRow:
    """Median per-system residuals of two direct factorizations at one dimension."""

    dim: int
    trials: int
    median_residual_svd: float
    median_residual_qrp: float


def method_compare(
    dims,
    trials: int,
    seed: int = 0,
    beta: int = 2,
    workers: int = 1,
    tol: Tolerances = DEFAULT_TOL,
):
    """Residual comparison of direct SVD vs direct pivoted-QR on random systems."""

    def one(task):
        n, t = task
        system = random_dense(n, beta, seed=(seed, n, t))
        res_svd = solve(system, MethodConfig(factorization="svd", seed=t), tol)
        res_qrp = solve(system, MethodConfig(factorization="qrp", seed=t), tol)
        return float(res_svd.residuals.max()), float(res_qrp.residuals.max())

    rows = []
    for n in dims:
        pairs = _map_ordered(one, [(n, t) for t in range(trials)], workers)
        svd_meds = float(np.median([p[0] for p in pairs]))
        qrp_meds = float(np.median([p[1] for p in pairs]))
        rows.append(
            MethodCompareRow(
                dim=n, trials=trials, median_residual_svd=svd_meds, median_residual_qrp=qrp_meds
            )
        )
    return rows
