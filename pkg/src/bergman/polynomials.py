"""Finite monomial expansions in z and conj(z) on C^d.

``HoloPoly`` holds a holomorphic polynomial sum_m c_m z^m as a map from
multi-index to coefficient.  ``MixedPoly`` holds a polynomial in z and
conj(z), sum_{a,b} c_{a,b} z^a conj(z)^b, which is the exact symbol class
for Toeplitz computations.  Both are immutable value types; arithmetic
returns new objects and drops zero coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Mapping, Tuple

import numpy as np

from .multiindex import MultiIndex, add, degree

_ZERO_TOL = 0.0  # coefficients are dropped only when exactly zero


def _clean(coeffs: Mapping, dim_of_key) -> dict:
    out = {}
    d = None
    for key, c in coeffs.items():
        if c == 0:
            continue
        kd = dim_of_key(key)
        if d is None:
            d = kd
        elif kd != d:
            raise ValueError("inconsistent multi-index lengths in coefficient map")
        out[key] = complex(c)
    return out


@dataclass(frozen=True)
class HoloPoly:
    """Holomorphic polynomial sum_m coeffs[m] * z^m on C^d."""

    d: int
    coeffs: Dict[MultiIndex, complex] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _clean(self.coeffs, len))
        for m in self.coeffs:
            if len(m) != self.d or any(k < 0 for k in m):
                raise ValueError(f"bad multi-index {m} for dimension {self.d}")

    @staticmethod
    def constant(d: int, c: complex = 1.0) -> "HoloPoly":
        return HoloPoly(d, {(0,) * d: c})

    @staticmethod
    def monomial(d: int, m: MultiIndex, c: complex = 1.0) -> "HoloPoly":
        return HoloPoly(d, {tuple(m): c})

    @staticmethod
    def coordinate(d: int, j: int) -> "HoloPoly":
        """The coordinate function z_j, 1-based j."""
        if not 1 <= j <= d:
            raise ValueError(f"coordinate index {j} out of range 1..{d}")
        m = [0] * d
        m[j - 1] = 1
        return HoloPoly(d, {tuple(m): 1.0})

    @property
    def degree(self) -> int:
        """Max |m| over the support; zero polynomial has degree 0."""
        return max((degree(m) for m in self.coeffs), default=0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "HoloPoly") -> "HoloPoly":
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            out[m] = out.get(m, 0.0) + c
        return HoloPoly(self.d, out)

    def __sub__(self, other: "HoloPoly") -> "HoloPoly":
        return self + other.scale(-1.0)

    def scale(self, c: complex) -> "HoloPoly":
        return HoloPoly(self.d, {m: c * v for m, v in self.coeffs.items()})

    def __mul__(self, other: "HoloPoly") -> "HoloPoly":
        out: Dict[MultiIndex, complex] = {}
        for a, ca in self.coeffs.items():
            for b, cb in other.coeffs.items():
                key = add(a, b)
                out[key] = out.get(key, 0.0) + ca * cb
        return HoloPoly(self.d, out)

    def map_by_degree(self, scalar_of_degree) -> "HoloPoly":
        """Apply a diagonal operator c_m -> scalar_of_degree(|m|) * c_m."""
        return HoloPoly(
            self.d, {m: scalar_of_degree(degree(m)) * c for m, c in self.coeffs.items()}
        )

    def number_operator(self) -> "HoloPoly":
        """N = sum_j z_j d/dz_j, acting as z^m -> |m| z^m."""
        return self.map_by_degree(lambda k: k)

    def __call__(self, z) -> complex:
        z = np.asarray(z, dtype=complex)
        total = 0.0 + 0.0j
        for m, c in self.coeffs.items():
            total += c * np.prod(z**np.array(m))
        return complex(total)

    def conjugate_to_mixed(self) -> "MixedPoly":
        """conj(f) as a MixedPoly supported on pure conj(z)^b monomials."""
        zero = (0,) * self.d
        return MixedPoly(self.d, {(zero, m): np.conj(c) for m, c in self.coeffs.items()})

    def to_mixed(self) -> "MixedPoly":
        zero = (0,) * self.d
        return MixedPoly(self.d, {(m, zero): c for m, c in self.coeffs.items()})


@dataclass(frozen=True)
class MixedPoly:
    """Polynomial sum_{a,b} coeffs[(a,b)] * z^a * conj(z)^b on C^d."""

    d: int
    coeffs: Dict[Tuple[MultiIndex, MultiIndex], complex] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _clean(self.coeffs, lambda k: len(k[0])))
        for a, b in self.coeffs:
            if len(a) != self.d or len(b) != self.d:
                raise ValueError(f"bad term ({a},{b}) for dimension {self.d}")
            if any(k < 0 for k in a) or any(k < 0 for k in b):
                raise ValueError(f"negative exponent in term ({a},{b})")

    @staticmethod
    def constant(d: int, c: complex = 1.0) -> "MixedPoly":
        zero = (0,) * d
        return MixedPoly(d, {(zero, zero): c})

    @staticmethod
    def term(d: int, a: MultiIndex, b: MultiIndex, c: complex = 1.0) -> "MixedPoly":
        """c * z^a * conj(z)^b."""
        return MixedPoly(d, {(tuple(a), tuple(b)): c})

    @staticmethod
    def abs2(d: int) -> "MixedPoly":
        """|z|^2 = sum_j z_j conj(z_j)."""
        out = {}
        for j in range(d):
            e = [0] * d
            e[j] = 1
            out[(tuple(e), tuple(e))] = 1.0
        return MixedPoly(d, out)

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        return max((degree(a) + degree(b) for a, b in self.coeffs), default=0)

    def __add__(self, other: "MixedPoly") -> "MixedPoly":
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, 0.0) + c
        return MixedPoly(self.d, out)

    def __sub__(self, other: "MixedPoly") -> "MixedPoly":
        return self + other.scale(-1.0)

    def scale(self, c: complex) -> "MixedPoly":
        return MixedPoly(self.d, {k: c * v for k, v in self.coeffs.items()})

    def __mul__(self, other: "MixedPoly") -> "MixedPoly":
        out: Dict[Tuple[MultiIndex, MultiIndex], complex] = {}
        for (a1, b1), c1 in self.coeffs.items():
            for (a2, b2), c2 in other.coeffs.items():
                key = (add(a1, a2), add(b1, b2))
                out[key] = out.get(key, 0.0) + c1 * c2
        return MixedPoly(self.d, out)

    def __pow__(self, k: int) -> "MixedPoly":
        if k < 0:
            raise ValueError("negative power of a polynomial")
        out = MixedPoly.constant(self.d, 1.0)
        for _ in range(k):
            out = out * self
        return out

    def conjugate(self) -> "MixedPoly":
        """Complex conjugate: swaps (a, b) -> (b, a) and conjugates coefficients."""
        return MixedPoly(self.d, {(b, a): np.conj(c) for (a, b), c in self.coeffs.items()})

    def is_hermitian(self, tol: float = 1e-14) -> bool:
        """True iff the polynomial is real-valued on C^d."""
        for (a, b), c in self.coeffs.items():
            mate = self.coeffs.get((b, a), 0.0)
            if abs(np.conj(c) - mate) > tol * max(1.0, abs(c)):
                return False
        return True

    def map_by_bidegree(self, scalar_of_bidegree) -> "MixedPoly":
        """Diagonal operator c_{a,b} -> scalar_of_bidegree(|a|, |b|) * c_{a,b}."""
        return MixedPoly(
            self.d,
            {
                (a, b): scalar_of_bidegree(degree(a), degree(b)) * c
                for (a, b), c in self.coeffs.items()
            },
        )

    def __call__(self, z) -> complex:
        z = np.asarray(z, dtype=complex)
        zc = np.conj(z)
        total = 0.0 + 0.0j
        for (a, b), c in self.coeffs.items():
            total += c * np.prod(z**np.array(a)) * np.prod(zc**np.array(b))
        return complex(total)


def mixed_product(fbar: HoloPoly, phi: MixedPoly, g: HoloPoly) -> MixedPoly:
    """conj(fbar) * phi * g as an exact MixedPoly."""
    return fbar.conjugate_to_mixed() * phi * g.to_mixed()


def abs2_power(d: int, k: int) -> MixedPoly:
    """(|z|^2)^k expanded multinomially into z^i conj(z)^i terms."""
    return MixedPoly.abs2(d) ** k
