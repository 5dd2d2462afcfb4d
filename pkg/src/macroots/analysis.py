"""Condition numbers, conditioning ratios, and growth-rate fits.

The root condition number is the spectral norm of the inverse Jacobian at a
simple root; the eigenvalue condition number is the classical
``1 / |u^H v|`` from unit-norm left/right eigenvectors.  Their quotient
(eigenvalue over root) measures how much the eigenvalue reformulation of
rootfinding can amplify error; its base-10 log is the extra digits at risk.
"""

from __future__ import annotations

import csv
import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .linalg import EPS
from .poly import PolySystem


class ConditioningWarning(UserWarning):
    """Emitted when an eigenvalue condition number had to be overflow-guarded."""


def jacobian(system: PolySystem, z) -> np.ndarray:
    """Analytic Jacobian matrix at a point (entry ij = dp_i/dx_j)."""
    z = np.asarray(z, dtype=complex)
    n = system.n
    jac = np.empty((n, n), dtype=complex)
    for i, p in enumerate(system.polys):
        for j in range(n):
            jac[i, j] = p.diff(j).eval(z)
    return jac


def root_condition(system: PolySystem, z) -> float:
    """Condition number of a simple root: ``||Df(z)^{-1}||_2``.

    Returns ``inf`` for a singular Jacobian rather than raising.
    """
    sing = linalg.singular_values(jacobian(system, z))
    smin = sing[-1] if sing.size else 0.0
    if smin == 0.0:
        return math.inf
    return 1.0 / float(smin)


def eig_condition(m: np.ndarray, lam: complex) -> float:
    """Condition number of the simple eigenvalue of ``m`` nearest ``lam``.

    ``kappa = ||u|| ||v|| / |u^H v|`` with unit-norm left/right eigenvectors.
    When ``|u^H v|`` falls below ``10 * machine_eps`` the value is capped at
    ``1 / (10 * machine_eps)`` and a :class:`ConditioningWarning` is emitted.
    """
    u, v, _ = linalg.eig_pair(m, lam)
    overlap = abs(np.vdot(u, v))
    guard = 10.0 * EPS
    if overlap < guard:
        warnings.warn(
            f"eigenvector overlap {overlap:.2e} below guard; condition number capped",
            ConditioningWarning,
            stacklevel=2,
        )
        return 1.0 / guard
    return 1.0 / overlap


def conditioning_ratio(system: PolySystem, m: np.ndarray, z, lam: complex) -> float:
    """Eigenvalue condition number over root condition number."""
    kappa_root = root_condition(system, z)
    kappa_eig = eig_condition(m, lam)
    if not math.isfinite(kappa_root) or kappa_root == 0.0:
        return math.inf
    return kappa_eig / kappa_root


def growth_rate(ns, crs) -> float:
    """Per-dimension growth ``g`` with ``cr ~ C (1+g)^n``.

    Ordinary least squares on ``log10(cr)`` against ``n``; the slope ``s``
    gives ``g = 10^s - 1``.
    """
    ns = np.asarray(ns, dtype=float)
    crs = np.asarray(crs, dtype=float)
    if ns.size != crs.size or ns.size < 2:
        raise ValueError("need at least two (n, cr) pairs")
    if np.unique(ns).size < 2:
        raise ValueError("need at least two distinct n values to fit a slope")
    if np.any(crs <= 0):
        raise ValueError("conditioning ratios must be positive")
    slope = np.polyfit(ns, np.log10(crs), 1)[0]
    return float(10.0**slope - 1.0)


@dataclass
class ConditioningRecord:
    """One measured root: condition numbers plus the experiment coordinates."""

    n: int
    root: tuple
    eigenvalue: complex
    root_cond: float
    eig_cond: float
    eps: float = float("nan")
    delta: float = float("nan")
    alpha: float = float("nan")
    k: int = 0
    seed: int = 0
    coordinate: int = 0  # which multiplication matrix the eigenvalue came from

    @property
    def cr(self) -> float:
        return self.eig_cond / self.root_cond


CSV_FIELDS = ("n", "eps", "delta", "alpha", "k", "seed", "root_cond", "eig_cond", "cr")


def records_to_csv(records, path, summary_lines=()) -> None:
    """Write conditioning records in the fixed experiment schema.

    ``summary_lines`` (e.g. fitted growth rates) are appended as ``#``
    comment lines after the data rows.
    """
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_FIELDS)
        for rec in records:
            writer.writerow(
                [
                    rec.n,
                    repr(rec.eps),
                    repr(rec.delta),
                    repr(rec.alpha),
                    rec.k,
                    rec.seed,
                    repr(rec.root_cond),
                    repr(rec.eig_cond),
                    repr(rec.cr),
                ]
            )
        for line in summary_lines:
            fh.write(f"# {line}\n")
