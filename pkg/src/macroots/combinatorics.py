"""Closed-form counting functions for Macaulay-matrix shapes and nullities.

All counts are exact integers (Python arbitrary precision), so the FLOP
model can evaluate them at degrees where the values exceed 2**63.

Conventions
-----------
For a square system of ``n`` polynomials with degrees ``beta_1..beta_n`` and
Macaulay degree ``d = 1 - n + sum(beta_i)``:

* ``monomials_leq(n, k)``   -- V_k, monomials of total degree <= k.
* ``monomials_eq(n, k)``    -- v_k, monomials of total degree exactly k.
* ``new_rows_at_degree``    -- t_k, rows of exact degree k (multiplier degree
  ``k - beta_i`` for each polynomial i).
* ``total_rows``            -- rows of the degree-k Macaulay matrix,
  ``sum_i V_{k - beta_i}``.
* ``macaulay_nullity``      -- N(k), the kernel dimension of the degree-k
  Macaulay matrix of a generic system, via the inclusion-exclusion sum over
  subsets of the degrees.  N(d) = N(d-1) = prod(beta_i).

Row counts use the exact-degree convention that matches assembled matrices
(``macaulay.build_macaulay``) shape-for-shape.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass


def binom(a: int, b: int) -> int:
    """Binomial coefficient with the vanishing convention.

    Returns 0 unless ``a >= b >= 0``, so shifted counts below degree zero
    drop out of alternating sums automatically.
    """
    if a < 0 or b < 0 or a < b:
        return 0
    return math.comb(a, b)


def monomials_leq(n: int, k: int) -> int:
    """Number of monomials in ``n`` variables of total degree <= ``k`` (V_k)."""
    if n < 1:
        raise ValueError("need at least one variable")
    return binom(n + k, k)


def monomials_eq(n: int, k: int) -> int:
    """Number of monomials in ``n`` variables of total degree exactly ``k`` (v_k)."""
    if n < 1:
        raise ValueError("need at least one variable")
    return binom(n + k - 1, k)


@dataclass(frozen=True)
class CountContext:
    """Dimension and degree data shared by the counting functions.

    ``d`` is the Macaulay degree ``1 - n + sum(degrees)``; matrices of any
    degree ``k <= d`` are counted against the same context.
    """

    n: int
    degrees: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("dimension must be >= 1")
        if len(self.degrees) != self.n:
            raise ValueError(f"expected {self.n} degrees, got {len(self.degrees)}")
        if any(b < 1 for b in self.degrees):
            raise ValueError("all degrees must be >= 1")

    @property
    def d(self) -> int:
        return 1 - self.n + sum(self.degrees)

    @property
    def root_count(self) -> int:
        return math.prod(self.degrees)


def new_rows_at_degree(ctx: CountContext, k: int) -> int:
    """Rows of exact total degree ``k`` in a Macaulay matrix (t_k).

    Each polynomial ``p_i`` contributes one row per multiplier monomial of
    degree ``k - beta_i``.  Zero for ``k`` below the minimum degree.
    """
    return sum(monomials_eq(ctx.n, k - b) for b in ctx.degrees)


def total_rows(ctx: CountContext, k: int) -> int:
    """Row count of the degree-``k`` Macaulay matrix: ``sum_i V_{k - beta_i}``."""
    return sum(monomials_leq(ctx.n, k - b) for b in ctx.degrees)


def macaulay_nullity(ctx: CountContext, k: int) -> int:
    """Kernel dimension N(k) of the degree-``k`` Macaulay matrix (generic system).

    Inclusion-exclusion over subsets of the polynomial degrees:

        N(k) = sum_{j=0}^{n} (-1)^j  sum_{i_1<...<i_j}
               binom(n + k - beta_{i_1} - ... - beta_{i_j}, n)

    with vanishing binomials outside their valid range.  For ``k`` in
    ``{d-1, d}`` this equals the generic root count ``prod(beta_i)``.
    """
    if k < 0:
        raise ValueError("degree must be >= 0")
    n = ctx.n
    total = 0
    for j in range(n + 1):
        sign = -1 if j % 2 else 1
        for subset in itertools.combinations(ctx.degrees, j):
            total += sign * binom(n + k - sum(subset), n)
    return total


def alpha(k: int) -> float:
    """The sequence ``alpha_k = (k/(k-1))**(k-1)``, increasing from 2 toward e."""
    if k < 2:
        raise ValueError("alpha is defined for k >= 2")
    return (k / (k - 1)) ** (k - 1)
