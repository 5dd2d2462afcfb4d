"""Macaulay matrix assembly and the deterministic monomial ordering.

Column convention
-----------------
Columns of the degree-``d`` matrix are all monomials of total degree <= d,
grouped by total degree *descending* (degree-d block first, constant last).
Within a degree block, monomials are sorted ascending lexicographically by
``(e_1, e_2, ..., e_n)``.  For two variables and d = 3 this gives

    y^3, x y^2, x^2 y, x^3, y^2, x y, x^2, y, x, 1.

Row convention
--------------
Rows are the shifted polynomials ``x^m * p_i`` with ``deg(m) <= d - deg(p_i)``,
ordered by multiplier degree ascending, then polynomial index, then multiplier
in the within-degree monomial order.  Row order is a free choice
mathematically; fixing it makes degree-by-degree extension append rows and
keeps assembly reproducible.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, replace
from typing import Iterator

import numpy as np

from .combinatorics import CountContext, monomials_eq, monomials_leq, total_rows
from .poly import Exponent, PolySystem


def monomials_of_degree(n: int, k: int) -> Iterator[Exponent]:
    """Yield exponent tuples of total degree exactly ``k``, ascending lex order."""
    if n == 1:
        yield (k,)
        return
    for e1 in range(k + 1):
        for rest in monomials_of_degree(n - 1, k - e1):
            yield (e1, *rest)


class ColumnOrder:
    """Ordered monomial labels for the columns of a degree-``d`` Macaulay matrix."""

    __slots__ = ("n", "d", "labels", "cut", "position")

    def __init__(self, n: int, d: int):
        if n < 1 or d < 0:
            raise ValueError("need n >= 1 and d >= 0")
        labels: list[Exponent] = []
        for k in range(d, -1, -1):
            labels.extend(monomials_of_degree(n, k))
        self.n = n
        self.d = d
        self.labels = tuple(labels)
        self.cut = monomials_eq(n, d)
        self.position = {m: i for i, m in enumerate(self.labels)}

    def __len__(self):
        return len(self.labels)

    def __repr__(self):
        return f"ColumnOrder(n={self.n}, d={self.d}, cols={len(self.labels)})"


def column_order(n: int, d: int) -> ColumnOrder:
    """Construct the deterministic column order for dimension ``n``, degree ``d``."""
    return ColumnOrder(n, d)


def monomial_str(exps: Exponent) -> str:
    """Human-readable monomial label, e.g. ``x1^2*x3``."""
    parts = []
    for i, e in enumerate(exps):
        if e == 1:
            parts.append(f"x{i + 1}")
        elif e > 1:
            parts.append(f"x{i + 1}^{e}")
    return "*".join(parts) if parts else "1"


@dataclass(frozen=True)
class MacaulayMatrix:
    """Dense Macaulay matrix with its column labeling.

    ``row_labels[k] = (poly_index, multiplier_exponent)`` identifies row k as
    the coefficient vector of ``x^multiplier * p_{poly_index}``; it is None
    for matrices formed by row recombination.  ``degrees`` records the input
    system's polynomial degrees (used downstream for the expected nullity).
    """

    data: np.ndarray
    order: ColumnOrder
    degree: int
    cut: int
    row_labels: tuple | None
    degrees: tuple[int, ...]

    @property
    def context(self) -> CountContext:
        return CountContext(self.order.n, self.degrees)

    def with_data(self, data: np.ndarray, row_labels=None) -> "MacaulayMatrix":
        return replace(self, data=data, row_labels=row_labels)


def _row_labels(system: PolySystem, d: int) -> list[tuple[int, Exponent]]:
    labels = []
    for mdeg in range(d - min(system.degrees) + 1):
        for i, p in enumerate(system.polys):
            if p.degree + mdeg > d:
                continue
            for mult in monomials_of_degree(system.n, mdeg):
                labels.append((i, mult))
    return labels


def _fill_rows(system: PolySystem, labels, order: ColumnOrder) -> np.ndarray:
    data = np.zeros((len(labels), len(order)), dtype=complex)
    for k, (i, mult) in enumerate(labels):
        for exps, coef in system.polys[i].terms.items():
            shifted = tuple(a + b for a, b in zip(exps, mult))
            data[k, order.position[shifted]] = coef
    return data


def build_macaulay(system: PolySystem, d: int) -> MacaulayMatrix:
    """Assemble the degree-``d`` Macaulay matrix of a system.

    Rows are every shift ``x^m * p_i`` of degree at most ``d``; columns are all
    monomials of degree at most ``d`` in the canonical order.  Entries are
    placed exactly (no arithmetic), so integer inputs stay integers.
    """
    if d < max(system.degrees):
        raise ValueError(
            f"Macaulay degree {d} is below the maximum polynomial degree "
            f"{max(system.degrees)}"
        )
    order = column_order(system.n, d)
    labels = _row_labels(system, d)
    ctx = CountContext(system.n, system.degrees)
    assert len(labels) == total_rows(ctx, d)
    data = _fill_rows(system, labels, order)
    return MacaulayMatrix(
        data=data,
        order=order,
        degree=d,
        cut=order.cut,
        row_labels=tuple(labels),
        degrees=system.degrees,
    )


def extend_blocks(mac: MacaulayMatrix, system: PolySystem):
    """One degree-raising step: blocks ``A``, ``B`` and the degree-(k+1) matrix.

    The new rows are the shifts with multiplier degree ``k + 1 - deg(p_i)``.
    ``A`` is their restriction to the new degree-(k+1) columns, ``B`` the
    restriction to the old columns, and the returned matrix is::

        [[0, mac], [A, B]]

    which equals ``build_macaulay(system, k + 1)`` up to a row permutation.
    Extension works at any degree, including past the reduction degree.
    """
    k = mac.degree
    n = system.n
    order_next = column_order(n, k + 1)
    v_next = order_next.cut

    new_labels = []
    for i, p in enumerate(system.polys):
        mdeg = k + 1 - p.degree
        for mult in monomials_of_degree(n, mdeg):
            new_labels.append((i, mult))
    new_labels.sort(key=lambda t: (sum(t[1]), t[0], t[1]))

    new_rows = _fill_rows(system, new_labels, order_next)
    A = new_rows[:, :v_next]
    B = new_rows[:, v_next:]

    old_rows = mac.data.shape[0]
    data = np.zeros((old_rows + len(new_labels), len(order_next)), dtype=complex)
    data[:old_rows, v_next:] = mac.data
    data[old_rows:] = new_rows
    labels = None
    if mac.row_labels is not None:
        labels = tuple(mac.row_labels) + tuple(new_labels)
    mac_next = MacaulayMatrix(
        data=data,
        order=order_next,
        degree=k + 1,
        cut=v_next,
        row_labels=labels,
        degrees=system.degrees,
    )
    return A, B, mac_next


def dump_csv(mac: MacaulayMatrix, path) -> None:
    """Debug dump with monomial column headers and shift row labels."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["row"] + [monomial_str(m) for m in mac.order.labels])
        for k in range(mac.data.shape[0]):
            if mac.row_labels is not None:
                i, mult = mac.row_labels[k]
                label = f"{monomial_str(mult)}*p{i + 1}"
            else:
                label = f"row{k}"
            writer.writerow([label] + [format_complex(c) for c in mac.data[k]])


def format_complex(c: complex) -> str:
    if c.imag == 0:
        return repr(c.real)
    return f"{c.real!r}{c.imag:+}j"
