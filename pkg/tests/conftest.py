"""Shared fixtures and independent oracles for the test suite."""

import numpy as np
import pytest
from scipy.optimize import linear_sum_assignment

from macroots import Polynomial, PolySystem
from macroots.analysis import jacobian


@pytest.fixture
def paper_system():
    """The two-variable quadratic worked example used throughout the docs.

    p1 = y^2 + 3xy - 4x + 1,  p2 = -6xy - 2x^2 + 6y + 3, variables (x, y).
    """
    p1 = Polynomial(2, {(0, 2): 1, (1, 1): 3, (1, 0): -4, (0, 0): 1})
    p2 = Polynomial(2, {(1, 1): -6, (2, 0): -2, (0, 1): 6, (0, 0): 3})
    return PolySystem([p1, p2])


def newton_refine(system, z, steps=1):
    """Newton's method oracle, independent of the Macaulay pipeline.

    Returns (refined point, norm of the last correction step).
    """
    z = np.asarray(z, dtype=complex).copy()
    step_norm = np.inf
    for _ in range(steps):
        delta = np.linalg.solve(jacobian(system, z), system.eval(z))
        z = z - delta
        step_norm = float(np.linalg.norm(delta))
    return z, step_norm


def multiset_distance(roots_a, roots_b):
    """Max pairing distance between two root multisets (optimal assignment)."""
    a = np.asarray(roots_a)
    b = np.asarray(roots_b)
    assert a.shape == b.shape
    cost = np.linalg.norm(a[:, None, :] - b[None, :, :], axis=2)
    rows, cols = linear_sum_assignment(cost)
    return float(cost[rows, cols].max())


def scalar_multiset_distance(vals_a, vals_b):
    """Max pairing distance between two multisets of complex scalars."""
    a = np.asarray(vals_a).reshape(-1, 1)
    b = np.asarray(vals_b).reshape(-1, 1)
    cost = np.abs(a[:, None, 0] - b[None, :, 0])
    rows, cols = linear_sum_assignment(cost)
    return float(cost[rows, cols].max())
