"""Closed-form FLOP model for the reduction pipelines.

Primitive costs are the unit-constant leading terms of the dense kernels:
``QR(m, n) = m n^2``, ``SVD(m, n) = m n min(m, n)``,
``MatMult(m, n, k) = m n k``, ``Backsolve(n, m) = m n^2``.  Pipeline totals
substitute the exact-degree row counts (the ones that match assembled
matrix shapes) into each step.  Everything is exact integer arithmetic so
the model stays meaningful at degrees where counts exceed 2**63.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

from .combinatorics import (
    CountContext,
    alpha,
    macaulay_nullity,
    monomials_eq,
    monomials_leq,
    new_rows_at_degree,
    total_rows,
)

METHODS = ("direct", "nullspace", "direct_rc", "nullspace_rc", "dbd")


def qr_cost(m: int, n: int) -> int:
    return m * n * n


def svd_cost(m: int, n: int) -> int:
    return m * n * min(m, n)


def matmult_cost(m: int, n: int, k: int) -> int:
    return m * n * k


def backsolve_cost(n: int, m: int) -> int:
    return m * n * n


@dataclass
class CostReport:
    """Per-step and total FLOP counts for one (dimension, degree, method)."""

    n: int
    beta: int
    method: str
    per_step: tuple
    total: int

    def __post_init__(self):
        assert self.total == sum(c for _, c in self.per_step)


def _counts(n: int, beta: int):
    ctx = CountContext(n, (beta,) * n)
    d = ctx.d
    return ctx, d, {
        "V_d": monomials_leq(n, d),
        "V_dm1": monomials_leq(n, d - 1),
        "v_d": monomials_eq(n, d),
        "M_d": total_rows(ctx, d),
        "r": ctx.root_count,
    }


def pipeline_cost(n: int, beta: int, method: str) -> CostReport:
    """FLOP total for one reduction pipeline at dimension ``n``, degree ``beta``.

    ``method`` is one of ``direct``, ``nullspace``, ``direct_rc``,
    ``nullspace_rc`` (random-combination variants), or ``dbd``.  The
    degree-by-degree total sums the three-step update for every degree from
    the polynomial degree up to the Macaulay degree; the step reaching
    degree ``beta`` starts from the trivial full null space one degree below.
    """
    if n < 2 or beta < 2:
        raise ValueError("cost model assumes n >= 2 and beta >= 2")
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; choose from {METHODS}")
    ctx, d, c = _counts(n, beta)
    v_d, V_d, V_dm1, M_d, r = c["v_d"], c["V_d"], c["V_dm1"], c["M_d"], c["r"]

    if method == "direct":
        steps = [
            ("qr_highdeg_block", qr_cost(M_d, v_d)),
            ("apply_q_to_lowdeg", matmult_cost(M_d, M_d, V_dm1)),
            ("svd_trailing_block", svd_cost(M_d - v_d, V_dm1)),
            ("form_z2", matmult_cost(v_d, V_dm1, r)),
            ("backsolve", backsolve_cost(v_d, r)),
        ]
    elif method == "nullspace":
        steps = [
            ("svd_macaulay", svd_cost(M_d, V_d)),
            ("svd_lowdeg_restriction", svd_cost(r, V_dm1)),
            ("form_f", matmult_cost(r, r, v_d)),
        ]
    elif method == "direct_rc":
        m = V_d - r
        steps = [
            ("combine_rows", matmult_cost(m, M_d, V_d)),
            ("qr_highdeg_block", qr_cost(m, v_d)),
            ("apply_q_to_lowdeg", matmult_cost(m, m, V_dm1)),
            ("svd_trailing_block", svd_cost(m - v_d, V_dm1)),
            ("form_z2", matmult_cost(v_d, V_dm1, r)),
            ("backsolve", backsolve_cost(v_d, r)),
        ]
    elif method == "nullspace_rc":
        m = V_d - r
        steps = [
            ("combine_rows", matmult_cost(m, M_d, V_d)),
            ("svd_macaulay", svd_cost(m, V_d)),
            ("svd_lowdeg_restriction", svd_cost(r, V_dm1)),
            ("form_f", matmult_cost(r, r, v_d)),
        ]
    else:  # dbd
        steps = []
        for k in range(beta, d + 1):
            n_prev = macaulay_nullity(ctx, k - 1)
            n_k = macaulay_nullity(ctx, k)
            t_k = new_rows_at_degree(ctx, k)
            vk = monomials_eq(n, k)
            vkm1_leq = monomials_leq(n, k - 1)
            steps.extend(
                [
                    (f"deg{k}_restrict_rows", matmult_cost(n_prev, vkm1_leq, t_k)),
                    (f"deg{k}_kernel_svd", svd_cost(n_prev + vk, t_k)),
                    (f"deg{k}_update_basis", matmult_cost(n_k, n_prev, vkm1_leq)),
                ]
            )

    return CostReport(
        n=n, beta=beta, method=method, per_step=tuple(steps), total=sum(c for _, c in steps)
    )


_BOUNDS = {
    # term -> (fixed_n bound, fixed_beta bound), without constant factors
    "V_dm1": (
        lambda n, b: float(b) ** n,
        lambda n, b: n**-0.5 * (b * alpha(b)) ** n,
    ),
    "V_d": (
        lambda n, b: float(b) ** n,
        lambda n, b: n**-0.5 * (b * alpha(b)) ** n,
    ),
    "v_d": (
        lambda n, b: float(b) ** (n - 1),
        lambda n, b: n**-0.5 * (b * alpha(b)) ** n,
    ),
    "T_d": (
        lambda n, b: float(b) ** n,
        lambda n, b: n**0.5 * (b * alpha(b)) ** n,
    ),
    "M_d": (
        lambda n, b: float(b) ** (n + 1),
        lambda n, b: n**0.5 * (b * alpha(b)) ** n,
    ),
    "r": (
        lambda n, b: float(b) ** n,
        lambda n, b: float(b) ** n,
    ),
}


def asymptotic_bound(term: str, regime: str, n: int, beta: int) -> float:
    """Evaluate a tight asymptotic bound expression (no constants).

    ``term`` is one of ``V_dm1, V_d, v_d, T_d, M_d, r``; ``regime`` is
    ``fixed_n`` (degree grows) or ``fixed_beta`` (dimension grows).  The
    ``T_d``/``M_d`` rows follow the cumulative row-count convention of the
    asymptotic table they come from, not the exact-degree counts used by
    :func:`pipeline_cost`.
    """
    if term not in _BOUNDS:
        raise ValueError(f"unknown term {term!r}; choose from {sorted(_BOUNDS)}")
    if regime == "fixed_n":
        return _BOUNDS[term][0](n, beta)
    if regime == "fixed_beta":
        return _BOUNDS[term][1](n, beta)
    raise ValueError(f"unknown regime {regime!r}; use 'fixed_n' or 'fixed_beta'")


def emit_comparison(dims, degrees) -> list[tuple]:
    """Rows ``(dim, degree, simple_flops, dbd_flops, ratio)``.

    Compares the one-shot null-space pipeline against the degree-by-degree
    construction.  Both columns count the cost through forming the
    conversion matrix, so the degree-by-degree side adds the two
    basis-formation steps the pipelines share.  ``ratio`` is simple/dbd
    (> 1 where the incremental construction is cheaper).
    """
    rows = []
    for n in dims:
        for beta in degrees:
            c = _counts(n, beta)[2]
            shared = svd_cost(c["r"], c["V_dm1"]) + matmult_cost(c["r"], c["r"], c["v_d"])
            simple = pipeline_cost(n, beta, "nullspace").total
            dbd = pipeline_cost(n, beta, "dbd").total + shared
            rows.append((n, beta, simple, dbd, simple / dbd))
    return rows


def comparison_to_csv(rows, path, meta_lines=()) -> None:
    with open(path, "w", newline="") as fh:
        for line in meta_lines:
            fh.write(f"# {line}\n")
        writer = csv.writer(fh)
        writer.writerow(["dim", "degree", "simple_flops", "dbd_flops", "ratio"])
        for dim, degree, simple, dbd, ratio in rows:
            writer.writerow([dim, degree, simple, dbd, repr(ratio)])
