"""Multiplication matrices and root extraction by simultaneous diagonalization.

Given a reduction, the multiplication-by-``x_i`` operator on the quotient
algebra is assembled from ``F``: for basis element ``g_k`` (coefficients
``conj(S[:, k])`` over the low-degree monomials), the coordinates of
``x_i g_k`` are read off as ``F`` rows at shifted monomial positions.  The
column convention used here makes the vector of basis values at a root a
left eigenvector, so eigenvalues of ``M_{x_i}`` are the i-th coordinates of
the roots.

Roots are extracted by rotating to random coordinates, Schur-factoring the
first rotated matrix, conjugating the rest, matching independently computed
eigenvalues to the Schur diagonal order, and rotating back.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import GenericityError
from .linalg import DEFAULT_TOL, Tolerances
from .macaulay import ColumnOrder, build_macaulay
from .poly import PolySystem, macaulay_degree
from .reduction import (
    MethodConfig,
    ReductionResult,
    combined_matrix,
    dbd_nullspace,
    direct_reduce,
    nullspace_reduce,
)


@dataclass
class MSMatrices:
    """The n commuting multiplication matrices of a solved reduction."""

    mats: list[np.ndarray]
    r: int
    n: int


@dataclass
class RootResult:
    """Roots with scale-invariant residuals and the method that produced them."""

    roots: np.ndarray  # (r, n) complex
    residuals: np.ndarray  # (r,)
    method: MethodConfig
    seed: int

    def to_dict(self) -> dict:
        return {
            "roots": [
                {
                    "z": [[z.real, z.imag] for z in root],
                    "residual": float(res),
                }
                for root, res in zip(self.roots, self.residuals)
            ],
            "method": self.method.label(),
            "seed": self.seed,
        }


def product_indices(var: int, order: ColumnOrder) -> np.ndarray:
    """Positions of ``x_var * mu`` for every monomial ``mu`` of degree <= d-1.

    ``var`` is 0-based.  Output has length ``V_{d-1}``; entry ``j`` is the
    position (in the full column order) of the variable times the ``j``-th
    low-degree monomial.  Products always exist since they have degree <= d.
    """
    if not 0 <= var < order.n:
        raise ValueError(f"variable index {var} out of range for n={order.n}")
    out = np.empty(len(order.labels) - order.cut, dtype=np.intp)
    for j, exps in enumerate(order.labels[order.cut :]):
        shifted = exps[:var] + (exps[var] + 1,) + exps[var + 1 :]
        out[j] = order.position[shifted]
    return out


def build_ms(red: ReductionResult) -> MSMatrices:
    """Assemble all multiplication matrices from a reduction."""
    order = red.order
    n = order.n
    mats = []
    if red.monomial_basis:
        sel = red.basis_transform
    else:
        s_conj = red.basis_transform.conj()
    for var in range(n):
        idx = product_indices(var, order)
        f_shift = red.F[idx, :]  # (V_{d-1}, r): row j = coords of x_var * mu_j
        if red.monomial_basis:
            mat = f_shift[sel, :].T
        else:
            mat = f_shift.T @ s_conj
        mats.append(mat)
    return MSMatrices(mats=mats, r=red.r, n=n)


def match_eigs(ordered: np.ndarray, unordered: np.ndarray) -> np.ndarray:
    """Greedy nearest-neighbor matching, consuming each candidate once.

    Walks ``ordered`` (Schur-diagonal order) and picks the closest unused
    entry of ``unordered``; ties break toward the lower index.
    """
    unordered = np.asarray(unordered)
    used = np.zeros(len(unordered), dtype=bool)
    out = np.empty(len(ordered), dtype=complex)
    for k, val in enumerate(ordered):
        dist = np.abs(unordered - val)
        dist[used] = np.inf
        pick = int(np.argmin(dist))
        used[pick] = True
        out[k] = unordered[pick]
    return out


def sim_diag(ms: MSMatrices, rng: np.random.Generator) -> np.ndarray:
    """Joint eigenvalue extraction for the commuting multiplication matrices.

    Returns an (r, n) array of roots.  A random orthogonal change of
    coordinates guards against repeated eigenvalues in any single coordinate;
    the Schur factor of the first rotated matrix fixes a consistent root
    ordering, and each coordinate's eigenvalues are refined by an
    independent eigenvalue computation matched to that ordering.
    """
    n, r = ms.n, ms.r
    w = linalg.random_orthogonal(n, rng)
    rotated = [sum(w[j, i] * ms.mats[i] for i in range(n)) for j in range(n)]
    u, t = linalg.schur(rotated[0])
    coords = np.empty((n, r), dtype=complex)
    coords[0] = np.diag(t)
    for j in range(1, n):
        ordered = np.diag(u.conj().T @ rotated[j] @ u)
        unordered = linalg.eigvals(rotated[j])
        coords[j] = match_eigs(ordered, unordered)
    return (w.T @ coords).T


def residual(system: PolySystem, z: np.ndarray) -> float:
    """Scale-invariant residual: max_i |p_i(z)| over a coefficient-norm scale.

    The scale for polynomial i is ``sum_a |c_{i,a}| * max(1, |z|_inf)^{deg a}``,
    a backward-error style normalization that is 1-homogeneous in the
    coefficients and grows with the point like the polynomial itself.
    """
    z = np.asarray(z, dtype=complex)
    zmax = max(1.0, float(np.max(np.abs(z))) if z.size else 1.0)
    worst = 0.0
    for p in system.polys:
        scale = sum(abs(c) * zmax ** sum(e) for e, c in p.terms.items())
        val = abs(p.eval(z))
        worst = max(worst, val / scale if scale > 0 else np.inf)
    return worst


def _reduce(system: PolySystem, cfg: MethodConfig, rng, tol: Tolerances) -> ReductionResult:
    d = macaulay_degree(system)
    if cfg.pipeline == "degree_by_degree":
        basis = dbd_nullspace(system, tol)
        return nullspace_reduce(system, cfg, N=basis, tol=tol)
    mac = build_macaulay(system, d)
    if cfg.random_combinations:
        mac = combined_matrix(mac, rng)
    if cfg.pipeline == "direct":
        return direct_reduce(mac, cfg, tol)
    return nullspace_reduce(system, cfg, mac=mac, tol=tol)


def solve(
    system: PolySystem,
    cfg: MethodConfig = MethodConfig(),
    tol: Tolerances = DEFAULT_TOL,
) -> RootResult:
    """Find all roots of a generic square polynomial system.

    Deterministic given ``cfg.seed``: the same seed drives both the random
    row combinations (when enabled) and the orthogonal rotation in the
    simultaneous diagonalization.

    Raises
    ------
    GenericityError
        If rank/nullity checks reveal the system does not behave like a
        generic one (multiple roots, positive-dimensional components, ...).
    """
    rng = np.random.default_rng(cfg.seed)
    red = _reduce(system, cfg, rng, tol)
    ms = build_ms(red)
    roots = sim_diag(ms, rng)
    residuals = np.array([residual(system, z) for z in roots])
    if not np.all(np.isfinite(residuals)):
        raise GenericityError("non-finite residuals; solve failed")
    return RootResult(roots=roots, residuals=residuals, method=cfg, seed=cfg.seed)


def reduce_and_ms(
    system: PolySystem,
    cfg: MethodConfig = MethodConfig(),
    tol: Tolerances = DEFAULT_TOL,
):
    """Run the reduction and matrix assembly, returning intermediates.

    Used by the conditioning experiments, which need the multiplication
    matrices themselves rather than just the roots.
    """
    rng = np.random.default_rng(cfg.seed)
    red = _reduce(system, cfg, rng, tol)
    ms = build_ms(red)
    roots = sim_diag(ms, rng)
    residuals = np.array([residual(system, z) for z in roots])
    result = RootResult(roots=roots, residuals=residuals, method=cfg, seed=cfg.seed)
    return red, ms, result


def roots_to_json(result: RootResult, path, extra: dict | None = None) -> None:
    """Write a root result as JSON, with optional extra metadata fields."""
    doc = result.to_dict()
    if extra:
        doc.update(extra)
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")
