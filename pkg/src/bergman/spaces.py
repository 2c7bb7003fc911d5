"""Weighted Bergman-type spaces on the unit ball of C^d.

For weight parameter lam > d the space is the classical weighted Bergman
space of holomorphic functions square-integrable against

    dmu_lam(z) = c_lam (1 - |z|^2)^lam dtau(z),
    dtau(z)    = (1 - |z|^2)^(-(d+1)) dz,

with c_lam chosen so mu_lam is a probability measure.  For 0 < lam <= d
the same monomial inner product

    <z^l, z^m> = delta_{l,m} m! Gamma(lam) / Gamma(lam + |m|)

is realized through a Sobolev-type form at level lam + 2n (n chosen so
lam + 2n > d) using the diagonal shift operators A and B built from the
number operator N.  The reproducing kernel is (1 - z . conj(w))^(-lam)
for every lam > 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .multiindex import MultiIndex, degree, factorial
from .polynomials import HoloPoly, MixedPoly

#: integer-detection tolerance for the c_lam zero convention
_INT_TOL = 1e-12

#: crossover between the explicit product and log-gamma differences
_GAMMA_RATIO_CROSSOVER = 64


@lru_cache(maxsize=None)
def gamma_ratio(lam: float, k: int) -> float:
    """Gamma(lam) / Gamma(lam + k) for lam > 0, k >= 0.

    Uses the explicit product 1 / ((lam)(lam+1)...(lam+k-1)) for small k
    and log-gamma differences beyond the crossover; both branches agree
    to ~1e-13 at the crossover (covered by tests).
    """
    if lam <= 0:
        raise ValueError(f"lambda must be positive, got {lam}")
    if k < 0:
        raise ValueError(f"k must be non-negative, got {k}")
    if k <= _GAMMA_RATIO_CROSSOVER:
        out = 1.0
        for j in range(k):
            out /= lam + j
        return out
    return math.exp(math.lgamma(lam) - math.lgamma(lam + k))


def c_lambda_value(d: int, lam: float) -> float:
    """Normalization constant Gamma(lam) / (pi^d Gamma(lam - d)).

    Since d is an integer this equals prod_{j=1..d} (lam - j) / pi^d,
    which is the analytic continuation to all lam > 0.  By convention the
    value is exactly 0 when lam is an integer with lam <= d; it is
    negative for d-1 < lam < d, positive again for d-2 < lam < d-1, and
    so on, alternating on unit intervals.
    """
    if d < 1:
        raise ValueError(f"dimension must be >= 1, got {d}")
    if lam <= 0:
        raise ValueError(f"lambda must be positive, got {lam}")
    r = round(lam)
    if abs(lam - r) <= _INT_TOL and 1 <= r <= d:
        return 0.0
    out = 1.0
    for j in range(1, d + 1):
        out *= lam - j
    return out / math.pi**d


@dataclass(frozen=True)
class SpaceParams:
    """Parameters (d, lam, n) of a generalized Bergman space.

    ``n`` is the Sobolev order used by the derivative-form inner product;
    it defaults to the smallest non-negative integer with lam + 2n > d.
    Any larger n gives the same inner product, which tests exploit.
    """

    d: int
    lam: float
    n: int = -1  # sentinel: resolve default in __post_init__

    def __post_init__(self):
        if self.d < 1:
            raise ValueError(f"dimension must be >= 1, got {self.d}")
        if self.lam <= 0:
            raise ValueError(f"lambda must be positive, got {self.lam}")
        if self.n == -1:
            n = 0
            while self.lam + 2 * n <= self.d:
                n += 1
            object.__setattr__(self, "n", n)
        elif self.n < 0:
            raise ValueError(f"Sobolev order must be >= 0, got {self.n}")
        elif self.lam + 2 * self.n <= self.d:
            raise ValueError(
                f"need lam + 2n > d for the Sobolev form, got "
                f"{self.lam} + 2*{self.n} <= {self.d}"
            )

    @property
    def c_lambda(self) -> float:
        return c_lambda_value(self.d, self.lam)

    def with_n(self, n: int) -> "SpaceParams":
        return SpaceParams(self.d, self.lam, n)


def c_lambda(params: SpaceParams) -> float:
    return params.c_lambda


# ---------------------------------------------------------------------------
# inner products
# ---------------------------------------------------------------------------

def monomial_norm_sq(m: MultiIndex, lam: float) -> float:
    """<z^m, z^m> = m! Gamma(lam) / Gamma(lam + |m|), strictly positive."""
    return factorial(m) * gamma_ratio(lam, degree(m))


def monomial_inner_product(l: MultiIndex, m: MultiIndex, params: SpaceParams) -> float:
    """Inner product of z^l and z^m; zero unless l = m."""
    if tuple(l) != tuple(m):
        return 0.0
    return monomial_norm_sq(tuple(m), params.lam)


def inner_product(f: HoloPoly, g: HoloPoly, params: SpaceParams) -> complex:
    """Sesquilinear extension, conjugate-linear in the first argument."""
    total = 0.0 + 0.0j
    for m, cf in f.coeffs.items():
        cg = g.coeffs.get(m)
        if cg is not None:
            total += np.conj(cf) * cg * monomial_norm_sq(m, params.lam)
    return complex(total)


def norm_sq(f: HoloPoly, params: SpaceParams) -> float:
    return inner_product(f, f, params).real


def basis_normalizer(m: MultiIndex, lam: float) -> float:
    """Scale factor turning z^m into the unit vector e_m = z^m / ||z^m||."""
    return 1.0 / math.sqrt(monomial_norm_sq(m, lam))


def normalized_monomial(d: int, m: MultiIndex, lam: float) -> HoloPoly:
    return HoloPoly.monomial(d, m, basis_normalizer(tuple(m), lam))


# ---------------------------------------------------------------------------
# number operator and the diagonal shift operators A, B, C
# ---------------------------------------------------------------------------

def number_operator(f: HoloPoly) -> HoloPoly:
    """N = sum_j z_j d/dz_j; z^m -> |m| z^m."""
    return f.number_operator()


def _shift_product(k: int, lam: float, j_lo: int, j_hi: int) -> float:
    """prod_{j=j_lo..j_hi-1} (1 + k / (lam + j))."""
    out = 1.0
    for j in range(j_lo, j_hi):
        out *= 1.0 + k / (lam + j)
    return out


def apply_A(f: HoloPoly, params: SpaceParams) -> HoloPoly:
    """A = (I + N/(lam+n)) ... (I + N/(lam+2n-1)), diagonal on monomials."""
    lam, n = params.lam, params.n
    return f.map_by_degree(lambda k: _shift_product(k, lam, n, 2 * n))


def apply_B(f: HoloPoly, params: SpaceParams) -> HoloPoly:
    """B = (I + N/lam) ... (I + N/(lam+n-1)), diagonal on monomials."""
    lam, n = params.lam, params.n
    return f.map_by_degree(lambda k: _shift_product(k, lam, 0, n))


def apply_C(p: MixedPoly, params: SpaceParams) -> MixedPoly:
    """C applied to a mixed polynomial.

    C chains the conjugate-number-operator factors at levels lam+n ..
    lam+2n-1 with the number-operator factors at levels lam .. lam+n-1.
    On z^a conj(z)^b it multiplies the coefficient by

        prod_{j=n..2n-1} (1 + |b|/(lam+j)) * prod_{j=0..n-1} (1 + |a|/(lam+j)).
    """
    lam, n = params.lam, params.n
    return p.map_by_bidegree(
        lambda ka, kb: _shift_product(kb, lam, n, 2 * n) * _shift_product(ka, lam, 0, n)
    )


# ---------------------------------------------------------------------------
# points of the ball, kernels, automorphisms
# ---------------------------------------------------------------------------

def as_ball_point(z: Sequence[complex], d: int | None = None) -> np.ndarray:
    """Validate and return z as a complex vector strictly inside the ball."""
    z = np.asarray(z, dtype=complex)
    if z.ndim == 0:
        z = z.reshape(1)
    if d is not None and z.shape != (d,):
        raise ValueError(f"expected a point of C^{d}, got shape {z.shape}")
    if np.vdot(z, z).real >= 1.0:
        raise ValueError(f"point with |z|^2 = {np.vdot(z, z).real} is not inside the unit ball")
    return z


def reproducing_kernel(z, w, lam: float) -> complex:
    """K_lam(z, w) = (1 - z . conj(w))^(-lam), principal branch.

    |z . conj(w)| < 1 keeps the base away from the branch cut along the
    negative real axis, so the principal power is single-valued here.
    """
    z = as_ball_point(z)
    w = as_ball_point(w, len(z))
    base = 1.0 - np.dot(z, np.conj(w))
    assert base.real > 0.0 or base.imag != 0.0, "kernel base landed on the cut"
    return complex(base ** (-lam))


def kernel_partial_sum(z, w, lam: float, M: int) -> complex:
    """Degree-M partial sum of the multi-index kernel series.

    sum_{|l| <= M} Gamma(lam+|l|)/(l! Gamma(lam)) z^l conj(w)^l, which
    converges to the reproducing kernel as M grows.
    """
    from .multiindex import enumerate_basis

    z = as_ball_point(z)
    w = as_ball_point(w, len(z))
    wc = np.conj(w)
    total = 0.0 + 0.0j
    for l in enumerate_basis(len(z), M):
        coef = 1.0 / (factorial(l) * gamma_ratio(lam, degree(l)))
        total += coef * np.prod(z ** np.array(l)) * np.prod(wc ** np.array(l))
    return complex(total)


def pointwise_bound_check(f: HoloPoly, z, params: SpaceParams) -> tuple[float, float]:
    """Return (|f(z)|^2, ||f||^2 (1-|z|^2)^(-lam)); the first never exceeds the second."""
    z = as_ball_point(z, f.d)
    t = np.vdot(z, z).real
    value = abs(f(z)) ** 2
    bound = norm_sq(f, params) * (1.0 - t) ** (-params.lam)
    return value, bound


def mobius(w, z) -> np.ndarray:
    """The involutive ball automorphism phi_w, with phi_w(0) = w.

    phi_w(z) = (w - P_w z - s_w Q_w z) / (1 - z . conj(w)) where P_w is
    the orthogonal projection onto the complex line through w, Q_w is its
    complement, and s_w = sqrt(1 - |w|^2).  For w = 0 the projection is
    degenerate and the map is -z.
    """
    w = as_ball_point(w)
    z = as_ball_point(z, len(w))
    ww = np.vdot(w, w).real
    if ww == 0.0:
        return -z
    s = math.sqrt(1.0 - ww)
    zw = np.dot(z, np.conj(w))  # <z, w>
    pz = (zw / ww) * w
    qz = z - pz
    return (w - pz - s * qz) / (1.0 - zw)
