"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s``.  Each criterion states
its runtime budget; the timer covers the criterion's computation only.
"""

import functools
import time

import numpy as np
import pytest
from scipy.linalg import subspace_angles

from macroots import (
    CountContext,
    MethodConfig,
    Polynomial,
    PolySystem,
    bezout_count,
    build_macaulay,
    dbd_nullspace,
    devastating,
    eig_condition,
    growth_rate,
    macaulay_degree,
    macaulay_nullity,
    random_combine,
    root_condition,
    solve,
)
from macroots.experiments import cluster_records, method_compare, perturb_growth
from macroots.flops import emit_comparison, pipeline_cost
from macroots.generators import random_dense
from macroots.linalg import nullspace, singular_values
from macroots.solver import reduce_and_ms

from conftest import multiset_distance, newton_refine, scalar_multiset_distance


def criterion(num, budget_seconds):
    """Time a criterion, print one PASS/FAIL line, and enforce the budget."""

    def wrap(fn):
        @functools.wraps(fn)
        def run(*args, **kwargs):
            start = time.perf_counter()
            try:
                fn(*args, **kwargs)
            except BaseException:
                elapsed = time.perf_counter() - start
                print(f"\nACCEPTANCE {num}: FAIL ({elapsed:.2f} s, budget {budget_seconds} s)")
                raise
            elapsed = time.perf_counter() - start
            print(f"\nACCEPTANCE {num}: PASS ({elapsed:.2f} s, budget {budget_seconds} s)")
            assert elapsed < budget_seconds, f"runtime {elapsed:.2f}s over budget"

        return run

    return wrap


def _paper_system():
    p1 = Polynomial(2, {(0, 2): 1, (1, 1): 3, (1, 0): -4, (0, 0): 1})
    p2 = Polynomial(2, {(1, 1): -6, (2, 0): -2, (0, 1): 6, (0, 0): 3})
    return PolySystem([p1, p2])


def _numeric_nullity(matrix, rtol=1e-8):
    s = singular_values(matrix)
    if s.size == 0 or s[0] == 0:
        return matrix.shape[1]
    return matrix.shape[1] - int(np.count_nonzero(s > rtol * s[0]))


SMALL_COMBOS = [(2, 2), (2, 3), (3, 2), (2, 4), (3, 3), (4, 2)]
ALL_COMBOS = SMALL_COMBOS + [(3, 4), (4, 3)]


@criterion(1, 1.0)
def test_criterion_1_worked_example_fidelity():
    system = _paper_system()
    # columns y^3 xy^2 x^2y x^3 y^2 xy x^2 y x 1; rows keyed by (poly, shift)
    expected3 = {
        (0, (0, 0)): [0, 0, 0, 0, 1, 3, 0, 0, -4, 1],
        (1, (0, 0)): [0, 0, 0, 0, 0, -6, -2, 6, 0, 3],
        (0, (0, 1)): [1, 3, 0, 0, 0, -4, 0, 1, 0, 0],
        (0, (1, 0)): [0, 1, 3, 0, 0, 0, -4, 0, 1, 0],
        (1, (0, 1)): [0, -6, -2, 0, 6, 0, 0, 3, 0, 0],
        (1, (1, 0)): [0, 0, -6, -2, 0, 6, 0, 0, 3, 0],
    }
    expected2 = {
        (0, (0, 0)): [1, 3, 0, 0, -4, 1],
        (1, (0, 0)): [0, -6, -2, 6, 0, 3],
    }
    for d, expected in ((3, expected3), (2, expected2)):
        mac = build_macaulay(system, d)
        assert set(mac.row_labels) == set(expected)
        for k, label in enumerate(mac.row_labels):
            assert np.array_equal(mac.data[k].real, np.asarray(expected[label], dtype=float))
            assert np.all(mac.data[k].imag == 0)


@criterion(2, 5.0)
def test_criterion_2_end_to_end_all_methods():
    system = _paper_system()
    configs = [
        MethodConfig(pipeline=p, factorization=f, seed=11)
        for p in ("direct", "nullspace")
        for f in ("svd", "qrp", "lq")
    ] + [MethodConfig(pipeline="degree_by_degree", factorization="svd", seed=11)]
    assert len(configs) == 7
    all_roots = []
    for cfg in configs:
        result = solve(system, cfg)
        assert len(result.roots) == 4
        assert result.residuals.max() < 1e-8, cfg.label()
        for z in result.roots:
            _, step = newton_refine(system, z)
            assert step < 1e-6, cfg.label()
        all_roots.append(result.roots)
    for i in range(len(all_roots)):
        for j in range(i + 1, len(all_roots)):
            assert multiset_distance(all_roots[i], all_roots[j]) < 1e-6


@criterion(3, 120.0)
def test_criterion_3_nullity_formula_vs_oracle():
    trials = 0
    for combo_index, (n, beta) in enumerate([(2, 2), (2, 3), (3, 2), (3, 3)]):
        ctx = CountContext(n, (beta,) * n)
        r = beta**n
        for s in range(25):
            system = random_dense(n, beta, seed=(3, combo_index, s))
            for k in range(beta, ctx.d + 1):
                mac = build_macaulay(system, k)
                assert macaulay_nullity(ctx, k) == _numeric_nullity(mac.data)
            assert macaulay_nullity(ctx, ctx.d) == r
            assert macaulay_nullity(ctx, ctx.d - 1) == r
            trials += 1
    assert trials == 100


@criterion(4, 120.0)
def test_criterion_4_degree_by_degree_correctness():
    for t in range(50):
        n, beta = ALL_COMBOS[t % len(ALL_COMBOS)]
        system = random_dense(n, beta, seed=(4, t))
        d = macaulay_degree(system)
        r = bezout_count(system)
        basis = dbd_nullspace(system)
        assert basis.shape[1] == r
        mac = build_macaulay(system, d)
        norm = np.linalg.norm(mac.data)
        assert np.linalg.norm(mac.data @ basis) <= 1e-10 * norm
        reference = nullspace(mac.data, r)
        assert subspace_angles(basis, reference).max() <= 1e-8


@criterion(5, 120.0)
def test_criterion_5_random_combinations_preserve_nullspace():
    for t in range(50):
        n, beta = SMALL_COMBOS[t % len(SMALL_COMBOS)]
        system = random_dense(n, beta, seed=(5, t))
        d = macaulay_degree(system)
        r = bezout_count(system)
        mac = build_macaulay(system, d)
        combined = random_combine(mac, np.random.default_rng((5, t)))
        assert subspace_angles(nullspace(mac.data, r), nullspace(combined, r)).max() <= 1e-8
        plain = solve(system, MethodConfig(seed=t))
        combo = solve(system, MethodConfig(random_combinations=True, seed=t))
        assert multiset_distance(plain.roots, combo.roots) <= 1e-5


@criterion(6, 120.0)
def test_criterion_6_commutation_and_coordinates():
    combos = [(2, 2), (2, 3), (3, 2), (3, 3), (4, 2)]
    for t in range(50):
        n, beta = combos[t % len(combos)]
        system = random_dense(n, beta, seed=(6, t))
        _, ms, result = reduce_and_ms(system, MethodConfig(seed=t))
        for i in range(n):
            for j in range(i + 1, n):
                mi, mj = ms.mats[i], ms.mats[j]
                comm = np.linalg.norm(mi @ mj - mj @ mi)
                assert comm <= 1e-6 * np.linalg.norm(mi) * np.linalg.norm(mj)
        for j in range(n):
            w = np.linalg.eigvals(ms.mats[j])
            assert scalar_multiset_distance(w, result.roots[:, j]) <= 1e-6


@criterion(7, 600.0)
def test_criterion_7_svd_vs_qrp_residual_trend():
    rows = method_compare(dims=(3, 4, 5), trials=50, seed=7)
    wins = sum(1 for r in rows if r.median_residual_svd <= r.median_residual_qrp)
    for r in rows:
        print(
            f"  dim {r.dim}: median residual svd={r.median_residual_svd:.3e} "
            f"qrp={r.median_residual_qrp:.3e}"
        )
    assert wins >= 2, f"svd beat qrp in only {wins}/3 dimensions"


@criterion(8, 120.0)
def test_criterion_8_devastating_conditioning():
    eps = 0.1
    dims = (2, 3, 4, 5)
    crs = []
    for n in dims:
        system = devastating(n, eps, seed=(8, n))
        _, ms, result = reduce_and_ms(system, MethodConfig(seed=n))
        i0 = int(np.argmin(np.max(np.abs(result.roots), axis=1)))
        z0 = result.roots[i0]
        kappa_root = root_condition(system, z0)
        assert abs(kappa_root - 1.0 / eps) <= 0.05 / eps  # (a) within 5% of eps^-1
        kappa_eig = eig_condition(ms.mats[0], z0[0])
        assert kappa_eig >= 0.5 * eps**-n  # (b)
        crs.append(kappa_eig / kappa_root)
    g = growth_rate(dims, crs)
    print(f"  devastating growth rate: {g:.4f}")
    assert abs(g - 9.0) <= 1.5  # (c)


@criterion(9, 600.0)
def test_criterion_9_perturbed_devastating_growth():
    deltas = (0.0, 1e-4, 1e-3, 1e-2)
    _, fits = perturb_growth(eps=1e-2, deltas=deltas, num_seeds=10, seed=9)
    medians = [float(np.median(fits[d])) for d in deltas]
    print("  median growth rates:", [f"{m:.3f}" for m in medians])
    assert all(b < a for a, b in zip(medians, medians[1:])), "not strictly decreasing"
    assert abs(medians[0] - 99.0) <= 0.25 * 99.0


@criterion(10, 600.0)
def test_criterion_10_clustered_root_degradation():
    ks = (2, 3, 4, 5)
    records = cluster_records(ks=ks, alpha=1e-3, num_seeds=12, n=4, seed=10)
    eig_medians, root_medians = [], []
    for k in ks:
        eig_medians.append(float(np.median([r.eig_cond for r in records if r.k == k])))
        root_medians.append(float(np.median([r.root_cond for r in records if r.k == k])))
    print("  eig medians: ", [f"{v:.3e}" for v in eig_medians])
    print("  root medians:", [f"{v:.3e}" for v in root_medians])
    assert all(b > a for a, b in zip(eig_medians, eig_medians[1:]))
    eig_factor = eig_medians[-1] / eig_medians[0]
    root_factor = root_medians[-1] / root_medians[0]
    assert root_factor < eig_factor


@criterion(11, 1.0)
def test_criterion_11_flop_model_comparison():
    rows = emit_comparison([3, 4], range(2, 61))
    ratio = {3: {}, 4: {}}
    for dim, degree, _, _, rat in rows:
        ratio[dim][degree] = rat
    arg3 = max(ratio[3], key=ratio[3].get)
    arg4 = max(ratio[4], key=ratio[4].get)
    near_one = abs(ratio[3][2] - 1.0) <= 0.10
    peak_in_range = 5 <= arg3 <= 60
    dim_shift = arg4 > arg3
    print(f"  ratio(dim3, deg2) = {ratio[3][2]:.3f} (within 10% of 1: {near_one})")
    print(f"  dim3 argmax = {arg3} (in 5..60: {peak_in_range}); dim4 argmax = {arg4} (> dim3: {dim_shift})")
    # Known model conflict: with exact-degree row counts the incremental
    # construction is ~2x cheaper already at degree 2 and its advantage peaks
    # at degree 4 in dimension 3 (see the decisions ledger).  The dimension
    # shift of the peak does hold.
    assert dim_shift
    assert near_one, f"ratio at degree 2 is {ratio[3][2]:.3f}, not within 10% of 1"
    assert peak_in_range, f"dim-3 peak at degree {arg3}, not in 5..60"


@criterion(12, 1.0)
def test_criterion_12_asymptotic_sanity():
    n = 3
    for method, power in (("direct", 3 * n + 2), ("nullspace", 3 * n + 1)):
        vals = [pipeline_cost(n, b, method).total / b**power for b in range(20, 61)]
        ratios = [b / a for a, b in zip(vals, vals[1:])]
        fluct = max(abs(r - 1.0) for r in ratios)
        print(f"  {method}: successive-ratio fluctuation {fluct:.3f}")
        assert fluct <= 0.20
