"""Reduction pipelines: from a Macaulay matrix to a quotient-basis conversion.

Every pipeline produces a :class:`ReductionResult` holding the matrix ``F``
(one row per monomial of degree <= d, in the canonical column order) that
expresses each monomial in a basis of the r-dimensional quotient algebra,
plus the transform identifying that basis inside the degree <= d-1 span.

Pipelines
---------
direct
    Full QR on the degree-d column block, then a factorization of the
    trailing block (SVD, pivoted QR, or LQ) to pick the basis, then a
    back-substitution for the degree-d rows of ``F``.
nullspace
    Factor the low-degree restriction of a null-space basis ``N`` of the
    Macaulay matrix; ``F = N K`` for an r x r change of basis ``K`` chosen so
    the bottom block of ``F`` is orthonormal (SVD/LQ) or a monomial selection
    (pivoted QR).
degree-by-degree
    Builds ``N`` incrementally from low degrees using the block structure of
    the extended matrix and the closed-form nullity of each step's kernel,
    then feeds the nullspace pipeline.

Random row combinations compress the matrix to ``V_d - r`` rows before either
pipeline; with probability one the kernel is unchanged.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import linalg
from .combinatorics import CountContext, macaulay_nullity, monomials_eq
from .errors import GenericityError
from .linalg import DEFAULT_TOL, Tolerances
from .macaulay import ColumnOrder, MacaulayMatrix, build_macaulay, column_order, extend_blocks
from .poly import PolySystem, macaulay_degree

PIPELINES = ("direct", "nullspace", "degree_by_degree")
FACTORIZATIONS = ("svd", "qrp", "lq")


@dataclass(frozen=True)
class MethodConfig:
    """Which pipeline/factorization to run, plus the RNG seed."""

    pipeline: str = "direct"
    factorization: str = "svd"
    random_combinations: bool = False
    seed: int = 0

    def __post_init__(self):
        if self.pipeline not in PIPELINES:
            raise ValueError(f"unknown pipeline {self.pipeline!r}; choose from {PIPELINES}")
        if self.factorization not in FACTORIZATIONS:
            raise ValueError(
                f"unknown factorization {self.factorization!r}; choose from {FACTORIZATIONS}"
            )
        if self.pipeline == "degree_by_degree" and self.random_combinations:
            raise ValueError("random combinations do not apply to the degree-by-degree pipeline")

    def label(self) -> str:
        tag = {"direct": "direct", "nullspace": "nullspace", "degree_by_degree": "dbd"}[
            self.pipeline
        ]
        name = f"{tag}-{self.factorization}"
        if self.random_combinations:
            name += "+rc"
        return name


@dataclass
class ReductionResult:
    """Conversion matrix and quotient-basis bookkeeping.

    F : (V_d, r) complex
        Row ``j`` gives the quotient-basis coordinates of the ``j``-th
        monomial in the column order.
    basis_transform : (V_{d-1}, r) complex array, or (r,) int array
        Columns span the basis inside the degree <= d-1 coordinate space
        (basis polynomial k has monomial coefficients ``conj(S[:, k])``).
        For the pivoted-QR variants it is instead the sorted index set of the
        selected basis monomials within the low-degree block.
    """

    F: np.ndarray
    basis_transform: np.ndarray
    r: int
    order: ColumnOrder

    @property
    def monomial_basis(self) -> bool:
        return self.basis_transform.ndim == 1


def _expected_counts(mac: MacaulayMatrix):
    r = math.prod(mac.degrees)
    cut = mac.cut
    n_cols = mac.data.shape[1]
    return r, cut, n_cols - cut


def direct_reduce(
    mac: MacaulayMatrix, cfg: MethodConfig, tol: Tolerances = DEFAULT_TOL
) -> ReductionResult:
    """Direct reduction of an assembled (or row-combined) Macaulay matrix."""
    r, cut, n_low = _expected_counts(mac)
    data = mac.data
    if data.shape[0] < cut:
        raise GenericityError(
            f"matrix has {data.shape[0]} rows but {cut} degree-{mac.degree} columns; "
            "the leading block cannot be full rank"
        )
    q, rmat = linalg.qr_full(data[:, :cut])
    rhat = rmat[:cut, :]
    qh_low = q.conj().T @ data[:, cut:]
    z = qh_low[:cut]
    mac3 = qh_low[cut:]

    k_star = n_low - r  # rank Mac3 must have for a generic system
    if k_star < 0:
        raise GenericityError("more expected roots than low-degree monomials")

    if k_star == 0:
        # Every low-degree monomial is a basis element (n = 1, and tiny cases).
        s_mat = np.eye(n_low, dtype=complex)
        z2 = z
        x = linalg.back_substitute(rhat, z2, tol)
        f = np.vstack([-x, s_mat])
        transform: np.ndarray
        if cfg.factorization == "qrp":
            transform = np.arange(n_low)
        else:
            transform = s_mat
        return ReductionResult(F=f, basis_transform=transform, r=r, order=mac.order)

    if cfg.factorization == "svd":
        _, sing, vh = linalg.svd(mac3, full_matrices=True)
        if linalg.numeric_rank(sing, tol.rank_rtol) != k_star:
            raise GenericityError(
                f"trailing block has numeric rank {linalg.numeric_rank(sing, tol.rank_rtol)}, "
                f"expected {k_star}; the system looks non-generic"
            )
        s_mat = vh[n_low - r :, :].conj().T
        z2 = z @ s_mat
        x = linalg.back_substitute(rhat, z2, tol)
        f = np.vstack([-x, s_mat])
        return ReductionResult(F=f, basis_transform=s_mat, r=r, order=mac.order)

    if cfg.factorization == "lq":
        sing = linalg.singular_values(mac3)
        if linalg.numeric_rank(sing, tol.rank_rtol) != k_star:
            raise GenericityError(
                f"trailing block has numeric rank {linalg.numeric_rank(sing, tol.rank_rtol)}, "
                f"expected {k_star}; the system looks non-generic"
            )
        qt, rt = linalg.qr_full(mac3.conj().T)
        diag = np.abs(np.diag(rt))
        if diag.size < k_star or np.min(diag[:k_star]) <= tol.rank_rtol * diag.max():
            raise GenericityError(
                "leading rows of the trailing block are numerically dependent; "
                "cannot form the LQ basis"
            )
        s_mat = qt[:, n_low - r :]
        z2 = z @ s_mat
        x = linalg.back_substitute(rhat, z2, tol)
        f = np.vstack([-x, s_mat])
        return ReductionResult(F=f, basis_transform=s_mat, r=r, order=mac.order)

    # Pivoted QR: monomial basis from the free columns.
    _, r3, piv = linalg.qr_pivoted(mac3)
    diag = np.abs(np.diag(r3))
    rank = linalg.numeric_rank(diag, tol.rank_rtol)
    if rank != k_star:
        raise GenericityError(
            f"trailing block has numeric rank {rank}, expected {k_star}; "
            "the system looks non-generic"
        )
    r11 = r3[:k_star, :k_star]
    r12 = r3[:k_star, k_star:]
    x2 = linalg.back_substitute(r11, r12, tol)  # pivot monomials in terms of the basis
    free = piv[k_star:]
    perm = np.argsort(free)
    sel = free[perm]
    x2 = x2[:, perm]
    z_p = z[:, piv[:k_star]]
    z_f = z[:, sel]
    x1 = linalg.back_substitute(rhat, z_f - z_p @ x2, tol)
    f = np.zeros((cut + n_low, r), dtype=complex)
    f[:cut] = -x1
    for j, col in enumerate(piv[:k_star]):
        f[cut + col] = -x2[j]
    for k, col in enumerate(sel):
        f[cut + col, k] = 1.0
    return ReductionResult(F=f, basis_transform=sel, r=r, order=mac.order)


def nullspace_reduce(
    system: PolySystem,
    cfg: MethodConfig,
    N: np.ndarray | None = None,
    mac: MacaulayMatrix | None = None,
    tol: Tolerances = DEFAULT_TOL,
) -> ReductionResult:
    """Reduction via a null-space basis of the degree-d Macaulay matrix.

    ``N`` may be supplied (e.g. from :func:`dbd_nullspace` or a row-combined
    matrix); otherwise it is computed from ``mac`` (assembled on demand).
    """
    d = macaulay_degree(system)
    r = math.prod(system.degrees)
    if N is None:
        if mac is None:
            mac = build_macaulay(system, d)
        _, sing, vh = linalg.svd(mac.data, full_matrices=True)
        n_cols = mac.data.shape[1]
        if linalg.numeric_rank(sing, tol.rank_rtol) != n_cols - r:
            raise GenericityError(
                f"Macaulay matrix has numeric nullity "
                f"{n_cols - linalg.numeric_rank(sing, tol.rank_rtol)}, expected {r}"
            )
        N = vh[n_cols - r :, :].conj().T
    order = mac.order if mac is not None else column_order(system.n, d)
    cut = order.cut
    if N.shape != (len(order.labels), r):
        raise ValueError(f"null-space basis has shape {N.shape}, expected {(len(order.labels), r)}")

    n_low_block = N[cut:, :]  # (V_{d-1}, r)
    n2 = n_low_block.conj().T  # columns = low-degree monomials

    if cfg.factorization == "svd":
        u, sing, vh = linalg.svd(n2, full_matrices=False)
        if sing.size < r or sing[-1] <= tol.rank_rtol * sing[0]:
            raise GenericityError(
                "low-degree restriction of the null space is rank deficient; "
                "the quotient basis cannot avoid degree-d monomials"
            )
        k_mat = u / sing[np.newaxis, :]
        f = N @ k_mat
        transform = vh.conj().T
        return ReductionResult(F=f, basis_transform=transform, r=r, order=order)

    if cfg.factorization == "lq":
        qn, rn = linalg.qr_thin(n_low_block)
        diag = np.abs(np.diag(rn))
        if diag.min() <= tol.rank_rtol * diag.max() or diag.max() == 0:
            raise GenericityError(
                "low-degree restriction of the null space is rank deficient; "
                "the quotient basis cannot avoid degree-d monomials"
            )
        f = np.linalg.solve(rn.T, N.T).T  # F = N Rn^{-1}
        return ReductionResult(F=f, basis_transform=qn, r=r, order=order)

    # Pivoted QR: basis = the r monomials at the pivot columns of N2.
    _, r2, piv = linalg.qr_pivoted(n2)
    diag = np.abs(np.diag(r2))
    if diag.size < r or diag[r - 1] <= tol.rank_rtol * diag[0]:
        raise GenericityError(
            "low-degree restriction of the null space is rank deficient; "
            "the quotient basis cannot avoid degree-d monomials"
        )
    sel = np.sort(piv[:r])
    n_basis = N[cut + sel, :]
    f = np.linalg.solve(n_basis.T, N.T).T  # F = N (N_basis)^{-1}
    return ReductionResult(F=f, basis_transform=sel, r=r, order=order)


def dbd_nullspace(system: PolySystem, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Null-space basis of the degree-d Macaulay matrix, built degree by degree.

    Starts from the small matrix at the maximum polynomial degree and, for
    each unit degree increment, extends the null space through the kernel of
    ``[A_k  B_k N_k]`` whose dimension is pinned by the closed-form nullity.
    The returned basis has orthonormal columns.
    """
    d = macaulay_degree(system)
    ctx = CountContext(system.n, system.degrees)
    k0 = max(system.degrees)
    mac = build_macaulay(system, k0)

    nullity0 = macaulay_nullity(ctx, k0)
    sing = linalg.singular_values(mac.data)
    expected_rank = mac.data.shape[1] - nullity0
    if linalg.numeric_rank(sing, tol.rank_rtol) != expected_rank:
        raise GenericityError(
            f"degree-{k0} matrix has numeric rank {linalg.numeric_rank(sing, tol.rank_rtol)}, "
            f"expected {expected_rank}"
        )
    basis = linalg.nullspace(mac.data, nullity0, tol)

    for k in range(k0, d):
        a_blk, b_blk, mac = extend_blocks(mac, system)
        kernel_mat = np.hstack([a_blk, b_blk @ basis])
        target = macaulay_nullity(ctx, k + 1)
        sing = linalg.singular_values(kernel_mat)
        expected_rank = kernel_mat.shape[1] - target
        if linalg.numeric_rank(sing, tol.rank_rtol) != expected_rank:
            raise GenericityError(
                f"kernel at degree {k + 1} has dimension "
                f"{kernel_mat.shape[1] - linalg.numeric_rank(sing, tol.rank_rtol)}, "
                f"expected {target}; the system looks non-generic"
            )
        step = linalg.nullspace(kernel_mat, target, tol)
        v_next = monomials_eq(system.n, k + 1)
        basis = np.vstack([step[:v_next], basis @ step[v_next:]])

    mac_norm = np.linalg.norm(mac.data)
    resid = np.linalg.norm(mac.data @ basis)
    if mac_norm > 0 and resid > tol.kernel_resid_rtol * mac_norm:
        raise GenericityError(
            f"incremental null space residual {resid / mac_norm:.2e} exceeds "
            f"{tol.kernel_resid_rtol:.0e}"
        )
    return basis


def random_combine(mac: MacaulayMatrix, rng: np.random.Generator) -> np.ndarray:
    """Compress to ``V_d - r`` standard-normal row combinations of the matrix.

    The result has the same column count and, with probability one, the same
    null space as the input.
    """
    r = math.prod(mac.degrees)
    n_rows, n_cols = mac.data.shape
    keep = n_cols - r
    if keep > n_rows:
        raise ValueError(f"cannot combine {n_rows} rows down to {keep}")
    c = rng.standard_normal((keep, n_rows))
    return c @ mac.data


def combined_matrix(mac: MacaulayMatrix, rng: np.random.Generator) -> MacaulayMatrix:
    """Macaulay wrapper around :func:`random_combine` output (labels dropped)."""
    return mac.with_data(random_combine(mac, rng), row_labels=None)
