"""Reproducible test-system families for solver and conditioning experiments.

Every generator is a pure function of its seed: coefficients are drawn in a
fixed monomial order from a freshly constructed generator, so the same seed
always yields the same system.
"""

from __future__ import annotations

import numpy as np

from .linalg import random_orthogonal
from .macaulay import monomials_of_degree
from .poly import Polynomial, PolySystem, constant, variable


def _all_monomials(n: int, max_degree: int):
    # Degree descending, lexicographic within a degree: the Macaulay column
    # order, so coefficient draws are reproducible.
    for k in range(max_degree, -1, -1):
        yield from monomials_of_degree(n, k)


def random_dense(n: int, beta: int, seed) -> PolySystem:
    """Dense system: every monomial of degree <= ``beta``, N(0,1) coefficients."""
    if n < 1 or beta < 1:
        raise ValueError("need n >= 1 and beta >= 1")
    rng = np.random.default_rng(seed)
    monos = list(_all_monomials(n, beta))
    polys = []
    for _ in range(n):
        coefs = rng.standard_normal(len(monos))
        polys.append(Polynomial(n, zip(monos, coefs)))
    return PolySystem(polys)


def devastating(n: int, eps: float, seed=None, Q: np.ndarray | None = None) -> PolySystem:
    """The near-multiple-root family ``p_i = x_i^2 + eps * (Q x)_i``.

    ``Q`` must be orthogonal; when omitted it is drawn Haar-uniformly from
    the seed.  The origin is an exact root, all other roots scale linearly
    with ``eps``, and the Jacobian at the origin is ``eps * Q``.
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    if Q is None:
        Q = random_orthogonal(n, np.random.default_rng(seed))
    else:
        Q = np.asarray(Q, dtype=float)
        if Q.shape != (n, n):
            raise ValueError(f"Q has shape {Q.shape}, expected {(n, n)}")
        if np.linalg.norm(Q.T @ Q - np.eye(n)) > 1e-8:
            raise ValueError("supplied Q is not orthogonal")
    polys = []
    for i in range(n):
        terms = {}
        sq = [0] * n
        sq[i] = 2
        terms[tuple(sq)] = 1.0
        for j in range(n):
            lin = [0] * n
            lin[j] = 1
            terms[tuple(lin)] = eps * Q[i, j]
        polys.append(Polynomial(n, terms))
    return PolySystem(polys)


def perturbed_devastating(n: int, eps: float, delta: float, seed) -> PolySystem:
    """Devastating system plus independent N(0, delta^2) noise on every
    coefficient of every monomial of degree <= 2.

    With ``delta = 0`` this reproduces :func:`devastating` for the same seed
    exactly (the noise draws still happen, keeping the stream aligned).
    """
    if delta < 0:
        raise ValueError("delta must be >= 0")
    rng = np.random.default_rng(seed)
    base = devastating(n, eps, Q=random_orthogonal(n, rng))
    monos = list(_all_monomials(n, 2))
    polys = []
    for p in base.polys:
        noise = rng.standard_normal(len(monos)) * delta
        terms = dict(p.terms)
        for mono, dv in zip(monos, noise):
            terms[mono] = terms.get(mono, 0j) + dv
        polys.append(Polynomial(n, terms))
    return PolySystem(polys)


def conic_coefficients(roots, center) -> np.ndarray:
    """Solve for ``a`` so that ``1 - sum_j a_j (x_j - c_j)^2`` vanishes at all roots.

    ``roots`` is an (n, n) array-like (one prescribed root per row); the
    linear system has matrix entries ``(root_i[j] - c_j)^2``.
    """
    roots = np.asarray(roots, dtype=float)
    center = np.asarray(center, dtype=float)
    m = (roots - center[np.newaxis, :]) ** 2
    return np.linalg.solve(m, np.ones(len(roots)))


def _axis_conic(n: int, a: np.ndarray, center: np.ndarray) -> Polynomial:
    p = constant(n, 1.0)
    for j in range(n):
        xj = variable(n, j)
        shift = xj - float(center[j])
        p = p - float(a[j]) * shift * shift
    return p


def _general_conic_through(points: np.ndarray, rng: np.random.Generator) -> Polynomial:
    """Axis-aligned quadric through > n points: solve the linear coefficient
    space, pick a random element, then rescale to the ``1 - sum a (x-c)^2``
    form."""
    m, n = points.shape
    dof = 2 * n + 1
    if m >= dof:
        raise ValueError(f"cannot interpolate {m} points with {dof} quadric coefficients")
    cond = np.hstack([points**2, points, np.ones((m, 1))])
    # Orthonormal basis of the coefficient null space.
    _, _, vh = np.linalg.svd(cond)
    basis = vh[m:].T  # (dof, dof - m)
    theta = basis @ rng.standard_normal(dof - m)
    b, g, h = theta[:n], theta[n : 2 * n], theta[2 * n]
    if np.min(np.abs(b)) < 1e-8:
        raise np.linalg.LinAlgError("degenerate quadric (vanishing squared term)")
    denom = h - np.sum(g**2 / (4.0 * b))
    if abs(denom) < 1e-10:
        raise np.linalg.LinAlgError("degenerate quadric (no constant normalization)")
    s = 1.0 / denom
    a = -s * b
    center = -g / (2.0 * b)
    return _axis_conic(n, a, center), center


def clustered_conic(
    n: int,
    k: int,
    alpha: float,
    seed,
    primary_root=None,
    centers=None,
):
    """System of axis-aligned conics sharing a cluster of ``k`` nearby roots.

    The primary root is drawn uniformly from [-1, 1]^n (or given); roots
    2..k perturb it coordinate-wise by N(0, alpha^2).  With ``k < n`` the
    prescribed set is completed by ``n - k`` well-separated random roots so
    each conic's coefficient solve is square.  For ``k > n`` the conics are
    interpolated through all ``k`` points in the full axis-aligned quadric
    coefficient space (requires ``k <= 2n``).

    Returns ``(system, info)`` where ``info`` records the prescribed roots,
    centers, and the worst prescribed-root residual.
    """
    if k < 1:
        raise ValueError("cluster size must be >= 1")
    if k > 2 * n:
        raise ValueError(f"cannot prescribe {k} common roots of {n} axis-aligned conics")
    rng = np.random.default_rng(seed)
    zeta1 = (
        np.asarray(primary_root, dtype=float)
        if primary_root is not None
        else rng.uniform(-1.0, 1.0, n)
    )
    roots = [zeta1]
    for _ in range(k - 1):
        roots.append(zeta1 + rng.normal(0.0, alpha, n))
    for _ in range(n - k):
        roots.append(rng.uniform(-1.0, 1.0, n))
    points = np.asarray(roots)

    polys = []
    used_centers = []
    max_resid = 0.0
    for j in range(n):
        explicit = centers is not None
        attempts = 0
        while True:
            attempts += 1
            try:
                if k <= n:
                    center = (
                        np.asarray(centers[j], dtype=float)
                        if explicit
                        else rng.uniform(-1.0, 1.0, n)
                    )
                    a = conic_coefficients(points, center)
                    if not np.all(np.isfinite(a)):
                        raise np.linalg.LinAlgError("non-finite conic coefficients")
                    p = _axis_conic(n, a, center)
                else:
                    p, center = _general_conic_through(points, rng)
                resid = max(abs(p.eval(z)) for z in points)
                if not np.isfinite(resid) or resid > 1e-9:
                    raise np.linalg.LinAlgError(f"prescribed-root residual {resid:.2e}")
            except np.linalg.LinAlgError:
                if explicit:
                    raise ValueError(
                        f"conic {j}: supplied center gives a degenerate system"
                    ) from None
                if attempts >= 20:
                    raise ValueError(
                        f"conic {j}: no usable center after {attempts} attempts"
                    ) from None
                continue
            break
        polys.append(p)
        used_centers.append(center)
        max_resid = max(max_resid, resid)

    info = {
        "roots": points,
        "centers": np.asarray(used_centers),
        "max_root_residual": max_resid,
    }
    return PolySystem(polys), info
