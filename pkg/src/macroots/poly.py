"""Sparse multivariate polynomials over complex coefficients.

A monomial is an exponent tuple ``(e_1, ..., e_n)`` with nonnegative integer
entries, one per variable.  A :class:`Polynomial` maps exponent tuples to
complex coefficients; zero coefficients are never stored.  Term iteration is
in a fixed graded order (total degree descending, then lexicographic in the
exponents), matching the Macaulay column order so evaluation and matrix
assembly are reproducible bit-for-bit.
"""

from __future__ import annotations

import json
import math
from typing import Iterable, Mapping, Sequence

import numpy as np

Exponent = tuple[int, ...]


def total_degree(exps: Exponent) -> int:
    """Total degree of a monomial exponent tuple."""
    return sum(exps)


def _term_sort_key(exps: Exponent):
    # Graded order used everywhere: degree descending, then ascending
    # lexicographic by (e_1, e_2, ..., e_n).  Same convention as the
    # Macaulay column order.
    return (-sum(exps), exps)


class Polynomial:
    """Polynomial in ``n`` variables stored as exponent tuple -> coefficient.

    Parameters
    ----------
    n : int
        Number of variables.
    terms : mapping or iterable of (exponent tuple, coefficient)
        Duplicate exponents are summed; zero coefficients are dropped.
    """

    __slots__ = ("n", "terms", "degree")

    def __init__(self, n: int, terms: Mapping[Exponent, complex] | Iterable):
        if n < 1:
            raise ValueError("polynomial dimension must be >= 1")
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Exponent, complex] = {}
        for exps, coef in items:
            exps = tuple(int(e) for e in exps)
            if len(exps) != n:
                raise ValueError(f"exponent {exps} has length {len(exps)}, expected {n}")
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps}")
            acc[exps] = acc.get(exps, 0j) + complex(coef)
        clean = {e: c for e, c in sorted(acc.items(), key=lambda t: _term_sort_key(t[0])) if c != 0}
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "degree", max((sum(e) for e in clean), default=0))

    def __setattr__(self, name, value):  # immutable after construction
        raise AttributeError("Polynomial is immutable")

    def eval(self, z: Sequence[complex]) -> complex:
        """Evaluate at a point, summing terms in the fixed graded order."""
        z = np.asarray(z, dtype=complex)
        if z.shape != (self.n,):
            raise ValueError(f"point has shape {z.shape}, expected ({self.n},)")
        acc = 0j
        for exps, coef in self.terms.items():
            mono = 1 + 0j
            for zi, e in zip(z, exps):
                if e:
                    mono *= zi**e
            acc += coef * mono
        return acc

    def diff(self, var: int) -> "Polynomial":
        """Partial derivative with respect to variable ``var`` (0-based)."""
        if not 0 <= var < self.n:
            raise ValueError(f"variable index {var} out of range")
        terms = {}
        for exps, coef in self.terms.items():
            e = exps[var]
            if e:
                lowered = exps[:var] + (e - 1,) + exps[var + 1 :]
                terms[lowered] = terms.get(lowered, 0j) + e * coef
        return Polynomial(self.n, terms)

    # Small arithmetic surface; enough for building test systems and the
    # generator families.
    def __add__(self, other):
        if isinstance(other, Polynomial):
            if other.n != self.n:
                raise ValueError("dimension mismatch")
            merged = dict(self.terms)
            for e, c in other.terms.items():
                merged[e] = merged.get(e, 0j) + c
            return Polynomial(self.n, merged)
        return self + constant(self.n, other)

    def __radd__(self, other):
        return self + other

    def __neg__(self):
        return Polynomial(self.n, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other if isinstance(other, Polynomial) else -complex(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            if other.n != self.n:
                raise ValueError("dimension mismatch")
            prod: dict[Exponent, complex] = {}
            for e1, c1 in self.terms.items():
                for e2, c2 in other.terms.items():
                    e = tuple(a + b for a, b in zip(e1, e2))
                    prod[e] = prod.get(e, 0j) + c1 * c2
            return Polynomial(self.n, prod)
        return Polynomial(self.n, {e: complex(other) * c for e, c in self.terms.items()})

    def __rmul__(self, other):
        return self * other

    def __eq__(self, other):
        return (
            isinstance(other, Polynomial)
            and self.n == other.n
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.n, tuple(self.terms.items())))

    def __repr__(self):
        return f"Polynomial(n={self.n}, terms={self.terms!r})"


def constant(n: int, value: complex) -> Polynomial:
    """The constant polynomial ``value`` in ``n`` variables."""
    return Polynomial(n, {(0,) * n: value})


def variable(n: int, var: int) -> Polynomial:
    """The polynomial ``x_var`` (0-based index) in ``n`` variables."""
    exps = [0] * n
    exps[var] = 1
    return Polynomial(n, {tuple(exps): 1.0})


class PolySystem:
    """A square system: ``n`` polynomials in ``n`` variables."""

    __slots__ = ("n", "polys")

    def __init__(self, polys: Sequence[Polynomial]):
        polys = tuple(polys)
        if not polys:
            raise ValueError("system must contain at least one polynomial")
        n = polys[0].n
        if len(polys) != n:
            raise ValueError(f"square system needs {n} polynomials, got {len(polys)}")
        for i, p in enumerate(polys):
            if p.n != n:
                raise ValueError(f"polynomial {i} has dimension {p.n}, expected {n}")
            if p.degree < 1 or not p.terms:
                raise ValueError(f"polynomial {i} must have degree >= 1")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "polys", polys)

    def __setattr__(self, name, value):
        raise AttributeError("PolySystem is immutable")

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(p.degree for p in self.polys)

    def eval(self, z: Sequence[complex]) -> np.ndarray:
        """Vector of polynomial values at ``z``."""
        return np.array([p.eval(z) for p in self.polys], dtype=complex)

    def __repr__(self):
        return f"PolySystem(n={self.n}, degrees={self.degrees})"


def macaulay_degree(system: PolySystem) -> int:
    """The degree ``d = 1 - n + sum(deg p_i)`` at which reduction happens."""
    return 1 - system.n + sum(system.degrees)


def bezout_count(system: PolySystem) -> int:
    """Generic root count ``r = prod(deg p_i)``."""
    return math.prod(system.degrees)


# ---------------------------------------------------------------------------
# JSON interchange format
#
#   {"n": 2, "polys": [{"terms": [{"exps": [0, 2], "coef": [1.0, 0.0]}, ...]},
#                      ...]}
#
# where "coef" is [real, imaginary].
# ---------------------------------------------------------------------------


def system_to_dict(system: PolySystem) -> dict:
    """JSON-ready dict for a system."""
    return {
        "n": system.n,
        "polys": [
            {
                "terms": [
                    {"exps": list(e), "coef": [c.real, c.imag]}
                    for e, c in p.terms.items()
                ]
            }
            for p in system.polys
        ],
    }


def system_from_dict(data: dict) -> PolySystem:
    """Parse the JSON polynomial format, reporting the offending term on error."""
    try:
        n = int(data["n"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"system JSON needs an integer 'n' field: {exc}") from exc
    raw_polys = data.get("polys")
    if not isinstance(raw_polys, list):
        raise ValueError("system JSON needs a 'polys' list")
    polys = []
    for pi, raw in enumerate(raw_polys):
        terms = []
        raw_terms = raw.get("terms") if isinstance(raw, dict) else None
        if not isinstance(raw_terms, list):
            raise ValueError(f"poly {pi}: needs a 'terms' list")
        for ti, term in enumerate(raw_terms):
            try:
                exps = tuple(int(e) for e in term["exps"])
                re, im = term["coef"]
                coef = complex(float(re), float(im))
            except (KeyError, TypeError, ValueError) as exc:
                raise ValueError(f"poly {pi}, term {ti}: malformed ({exc})") from exc
            terms.append((exps, coef))
        try:
            polys.append(Polynomial(n, terms))
        except ValueError as exc:
            raise ValueError(f"poly {pi}: {exc}") from exc
    return PolySystem(polys)


def save_system(system: PolySystem, path, metadata: dict | None = None) -> None:
    """Write a system (plus optional metadata) as JSON."""
    doc = system_to_dict(system)
    if metadata:
        doc["metadata"] = metadata
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")


def load_system(path) -> PolySystem:
    """Read a system from a JSON file."""
    with open(path) as fh:
        data = json.load(fh)
    return system_from_dict(data)
