"""Dense complex decompositions behind the reduction pipelines.

Thin wrappers over LAPACK (via scipy/numpy) that pin the conventions the
rest of the package relies on: factor shapes, ordering of singular values,
how null spaces of known dimension are extracted, and the Haar sign fix for
random orthogonal matrices.  Tolerance constants live in one place
(:class:`Tolerances`) and can be scaled uniformly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla

from .errors import BackendError, SingularMatrixError

EPS = float(np.finfo(np.float64).eps)


@dataclass(frozen=True)
class Tolerances:
    """Central tolerance configuration.

    rank_rtol
        Singular values below ``rank_rtol * sigma_max`` count as zero when a
        numeric rank is compared against a closed-form count.
    singular_rtol
        A triangular diagonal entry below ``singular_rtol * max|R|`` makes a
        back-substitution refuse to proceed.
    kernel_resid_rtol
        Required relative residual ``||M N|| / ||M||`` for an incrementally
        built null space.
    """

    rank_rtol: float = 1e-8
    singular_rtol: float = EPS
    kernel_resid_rtol: float = 1e-10

    def scaled(self, factor: float) -> "Tolerances":
        """All tolerances multiplied by one knob."""
        if factor <= 0:
            raise ValueError("tolerance scale must be positive")
        return Tolerances(
            rank_rtol=self.rank_rtol * factor,
            singular_rtol=self.singular_rtol * factor,
            kernel_resid_rtol=self.kernel_resid_rtol * factor,
        )


DEFAULT_TOL = Tolerances()


def _as_matrix(a) -> np.ndarray:
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2:
        raise ValueError(f"expected a matrix, got shape {a.shape}")
    if a.size and not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    return a


def qr_thin(a):
    """Economy QR: ``a = Q R`` with Q (m, min(m,n)) having orthonormal columns."""
    a = _as_matrix(a)
    try:
        return sla.qr(a, mode="economic")
    except sla.LinAlgError as exc:  # pragma: no cover - backend failure
        raise BackendError(f"QR failed: {exc}") from exc


def qr_full(a):
    """Full QR: ``a = Q R`` with Q square unitary (m, m)."""
    a = _as_matrix(a)
    try:
        return sla.qr(a)
    except sla.LinAlgError as exc:  # pragma: no cover
        raise BackendError(f"QR failed: {exc}") from exc


def qr_pivoted(a):
    """Column-pivoted QR: ``a[:, piv] = Q R`` with nonincreasing ``|R_jj|``."""
    a = _as_matrix(a)
    try:
        q, r, piv = sla.qr(a, mode="economic", pivoting=True)
    except sla.LinAlgError as exc:  # pragma: no cover
        raise BackendError(f"pivoted QR failed: {exc}") from exc
    return q, r, piv


def lq(a):
    """LQ factorization ``a = L Q`` computed as the QR of the conjugate transpose."""
    a = _as_matrix(a)
    qt, rt = qr_full(a.conj().T)
    return rt.conj().T, qt.conj().T


def svd(a, full_matrices: bool = True):
    """SVD ``a = U diag(s) V^H`` with nonincreasing singular values."""
    a = _as_matrix(a)
    if a.shape[0] == 0 or a.shape[1] == 0:
        m, n = a.shape
        u = np.eye(m, m if full_matrices else 0, dtype=complex)
        vh = np.eye(n if full_matrices else 0, n, dtype=complex)
        return u, np.zeros(0), vh
    try:
        return sla.svd(a, full_matrices=full_matrices)
    except sla.LinAlgError:
        # gesdd occasionally fails to converge; gesvd is slower but robust.
        try:
            return sla.svd(a, full_matrices=full_matrices, lapack_driver="gesvd")
        except sla.LinAlgError as exc:
            raise BackendError(f"SVD did not converge: {exc}") from exc


def singular_values(a) -> np.ndarray:
    a = _as_matrix(a)
    if a.shape[0] == 0 or a.shape[1] == 0:
        return np.zeros(0)
    return sla.svdvals(a)


def numeric_rank(s: np.ndarray, rtol: float) -> int:
    """Rank by counting singular values above ``rtol * s_max``."""
    s = np.asarray(s)
    if s.size == 0 or s[0] == 0:
        return 0
    return int(np.count_nonzero(s > rtol * s[0]))


def nullspace(a, nullity: int, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Orthonormal basis of the null space, taking the nullity as known.

    Returns the last ``nullity`` right singular vectors.  No rank threshold
    is applied here; callers that want a genericity check compare
    :func:`numeric_rank` against the closed-form count themselves.
    """
    a = _as_matrix(a)
    if not 0 <= nullity <= a.shape[1]:
        raise ValueError(f"nullity {nullity} out of range for {a.shape}")
    if a.shape[0] == 0:
        return np.eye(a.shape[1], dtype=complex)[:, a.shape[1] - nullity :]
    _, _, vh = svd(a, full_matrices=True)
    return vh[len(vh) - nullity :, :].conj().T


def schur(a):
    """Complex Schur decomposition ``a = U T U^H``; returns ``(U, T)``."""
    a = _as_matrix(a)
    if a.shape[0] != a.shape[1]:
        raise ValueError("Schur needs a square matrix")
    try:
        t, z = sla.schur(a, output="complex")
    except sla.LinAlgError as exc:
        raise BackendError(f"Schur failed to converge: {exc}") from exc
    return z, t


def eigvals(a) -> np.ndarray:
    """Eigenvalues via the standard dense eigensolver."""
    a = _as_matrix(a)
    try:
        return np.linalg.eigvals(a)
    except np.linalg.LinAlgError as exc:
        raise BackendError(f"eigenvalue computation failed: {exc}") from exc


def eig_pair(a, lam: complex):
    """Unit-norm left and right eigenvectors for the eigenvalue nearest ``lam``.

    Returns ``(u, v, w)`` where ``u^H a = w u^H``, ``a v = w v`` and ``w`` is
    the matched (recomputed) eigenvalue.
    """
    a = _as_matrix(a)
    try:
        w, vl, vr = sla.eig(a, left=True, right=True)
    except sla.LinAlgError as exc:
        raise BackendError(f"eigendecomposition failed: {exc}") from exc
    i = int(np.argmin(np.abs(w - lam)))
    u = vl[:, i] / np.linalg.norm(vl[:, i])
    v = vr[:, i] / np.linalg.norm(vr[:, i])
    return u, v, w[i]


def back_substitute(r, b, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Solve ``r x = b`` for upper-triangular ``r``, refusing near-singular input."""
    r = _as_matrix(r)
    b = np.asarray(b, dtype=complex)
    if r.shape[0] != r.shape[1]:
        raise ValueError("triangular solve needs a square factor")
    if r.shape[0] == 0:
        return np.zeros((0,) + b.shape[1:], dtype=complex)
    diag = np.abs(np.diag(r))
    scale = np.abs(r).max()
    if scale == 0 or diag.min() < tol.singular_rtol * scale:
        raise SingularMatrixError(
            "triangular factor is numerically singular; the system looks non-generic"
        )
    return sla.solve_triangular(r, b)


def random_orthogonal(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed real orthogonal matrix.

    QR of a standard Gaussian matrix with the sign of R's diagonal absorbed
    into Q, which makes the distribution exactly Haar and the output a
    deterministic function of the generator state.
    """
    if n < 1:
        raise ValueError("dimension must be >= 1")
    g = rng.standard_normal((n, n))
    q, r = np.linalg.qr(g)
    signs = np.sign(np.diag(r))
    signs[signs == 0] = 1.0
    return q * signs
