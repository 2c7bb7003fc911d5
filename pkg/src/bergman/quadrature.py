"""Integration over the unit ball of C^d against (1-|z|^2)^(w-d-1) dz.

Three paths are provided:

* an exact path for mixed polynomials, splitting each z^a conj(z)^b term
  into a closed-form sphere integral times a Beta-function radial moment;
* a Gauss-Jacobi radial path for radial symbols g(|z|^2), with the
  boundary behavior of the weight folded into the Jacobi weight;
* an importance-sampled Monte Carlo path for generic integrands, with a
  reproducible stream per seed and antithetic sphere directions.

The weight exponent convention matches the measures used elsewhere:
integrating f against (1-|z|^2)^(w-d-1) dz equals integrating f against
(1-|z|^2)^w dtau, and multiplying by c_w normalizes to a probability
measure when w > d.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Literal, Optional, Tuple

import numpy as np
from scipy.special import roots_jacobi

from .multiindex import MultiIndex, degree, factorial
from .polynomials import MixedPoly


class DivergentWeightError(ValueError):
    """The requested radial weight is not integrable at the boundary."""


class NonFiniteSampleError(RuntimeError):
    """A Monte Carlo integrand evaluation returned a non-finite value."""

    def __init__(self, point: np.ndarray, value: complex):
        self.point = point
        self.value = value
        super().__init__(f"integrand returned {value!r} at z = {point!r}")


IntegrabilityClass = Literal["bounded", "L1", "L2"]


@dataclass(frozen=True)
class RadialProfile:
    """Radial symbol phi(z) = g(|z|^2) with declared boundary behavior.

    ``boundary_exponent`` s declares that g(t) = (1-t)^s * h(t) with h
    bounded near t = 1; quadrature folds the (1-t)^s factor into the
    Jacobi weight, which keeps weights valid for small lam.  The declared
    integrability class is recorded, not verified: L1 against tau needs
    s > d in the mean, L2 needs s > d/2.
    """

    g: Callable[[float], complex]
    klass: IntegrabilityClass = "bounded"
    boundary_exponent: float = 0.0
    smooth_part: Optional[Callable[[float], complex]] = None

    def smooth(self, t: float) -> complex:
        """g(t) / (1-t)^boundary_exponent, using the declared smooth part if given."""
        if self.smooth_part is not None:
            return self.smooth_part(t)
        if self.boundary_exponent == 0.0:
            return self.g(t)
        return self.g(t) / (1.0 - t) ** self.boundary_exponent

    @staticmethod
    def power(s: float, d: int) -> "RadialProfile":
        """g(t) = (1-t)^s, declared L1 when s > d, else L2 when s > d/2, else bounded."""
        klass: IntegrabilityClass = "L1" if s > d else ("L2" if s > d / 2 else "bounded")
        return RadialProfile(
            g=lambda t, s=s: (1.0 - t) ** s,
            klass=klass,
            boundary_exponent=s,
            smooth_part=lambda t: 1.0,
        )


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes and weights for integral_0^1 F(t) t^beta (1-t)^alpha dt.

    The weight function is folded into ``weights``; ``integrate`` only
    evaluates the smooth factor F at the nodes.  ``exact_degree`` is the
    largest polynomial degree of F integrated exactly.
    """

    nodes: np.ndarray
    weights: np.ndarray
    alpha: float
    beta: float
    sphere_rule: str = "exact-monomial"
    exact_degree: Optional[int] = None

    def __post_init__(self):
        if np.any(self.weights <= 0) or np.any((self.nodes <= 0) | (self.nodes >= 1)):
            raise ValueError("radial rule needs positive weights and nodes inside (0,1)")

    @staticmethod
    def gauss_jacobi(alpha: float, beta: float, n: int = 64) -> "QuadratureRule":
        """Gauss-Jacobi rule on (0,1) for weight t^beta (1-t)^alpha."""
        if alpha <= -1.0:
            raise DivergentWeightError(
                f"radial weight (1-t)^{alpha} is not integrable (needs alpha > -1)"
            )
        if beta <= -1.0:
            raise DivergentWeightError(f"radial weight t^{beta} is not integrable")
        x, w = roots_jacobi(n, alpha, beta)
        t = 0.5 * (x + 1.0)
        w = w * 0.5 ** (alpha + beta + 1.0)
        return QuadratureRule(
            nodes=t, weights=w, alpha=alpha, beta=beta, exact_degree=2 * n - 1
        )

    def integrate(self, smooth: Callable[[float], complex]) -> complex:
        vals = np.array([smooth(t) for t in self.nodes], dtype=complex)
        return complex(np.sum(self.weights * vals))


# ---------------------------------------------------------------------------
# exact path
# ---------------------------------------------------------------------------

def sphere_monomial_integral(a: MultiIndex, b: MultiIndex, d: int) -> float:
    """integral over S^{2d-1} of z^a conj(z)^b dsigma, sigma normalized.

    Zero unless a = b; for a = b the value is (d-1)! a! / (d-1+|a|)!.
    """
    if d < 1:
        raise ValueError(f"dimension must be >= 1, got {d}")
    a, b = tuple(a), tuple(b)
    if a != b:
        return 0.0
    k = degree(a)
    return math.factorial(d - 1) * factorial(a) / math.factorial(d - 1 + k)


def radial_moment(k: int, alpha: float, d: int) -> float:
    """integral_0^1 t^(k+d-1) (1-t)^alpha dt = B(k+d, alpha+1), via log-gamma."""
    if alpha <= -1.0:
        raise DivergentWeightError(
            f"radial moment with exponent alpha = {alpha} diverges (needs alpha > -1)"
        )
    if k < 0:
        raise ValueError(f"k must be non-negative, got {k}")
    return math.exp(
        math.lgamma(k + d) + math.lgamma(alpha + 1.0) - math.lgamma(k + d + alpha + 1.0)
    )


def integrate_ball_exact(p: MixedPoly, weight_exponent: float, d: int) -> complex:
    """integral over B^d of p(z) (1-|z|^2)^(weight_exponent-d-1) dz, exactly.

    Each term z^a conj(z)^b reduces to a normalized sphere integral (zero
    unless a = b) times a Beta radial moment times the sphere area
    2 pi^d / (d-1)!.  Terms killed by sphere symmetry never touch the
    radial factor, so odd integrands vanish exactly even when the radial
    moment of a surviving term would diverge.
    """
    if p.d != d:
        raise ValueError(f"polynomial dimension {p.d} does not match d = {d}")
    total = 0.0 + 0.0j
    for (a, b), c in p.coeffs.items():
        if a != b:
            continue
        k = degree(a)
        sphere = sphere_monomial_integral(a, b, d)
        radial = radial_moment(k, weight_exponent - d - 1.0, d)
        total += c * sphere * radial
    return complex(total * math.pi**d / math.factorial(d - 1))


def integrate_radial_symbol(
    g: RadialProfile,
    weight_exponent: float,
    d: int,
    rule: Optional[QuadratureRule] = None,
    extra_t_power: int = 0,
) -> complex:
    """integral over B^d of g(|z|^2) |z|^(2 extra_t_power) (1-|z|^2)^(w-d-1) dz.

    Reduces to pi^d/Gamma(d) * integral_0^1 g(t) t^(d-1+extra) (1-t)^(w-d-1) dt
    on the radial rule.  The profile's declared boundary exponent is
    folded into the Jacobi weight before node placement.
    """
    s = g.boundary_exponent
    alpha = weight_exponent - d - 1.0 + s
    beta = d - 1.0 + extra_t_power
    if rule is None:
        rule = QuadratureRule.gauss_jacobi(alpha, beta)
    elif rule.alpha != alpha or rule.beta != beta:
        raise ValueError(
            f"rule built for weight (alpha={rule.alpha}, beta={rule.beta}) "
            f"does not match requested (alpha={alpha}, beta={beta})"
        )
    val = rule.integrate(g.smooth)
    return complex(val * math.pi**d / math.gamma(d))


# ---------------------------------------------------------------------------
# Monte Carlo path
# ---------------------------------------------------------------------------

def _sphere_directions(rng: np.random.Generator, npairs: int, d: int) -> np.ndarray:
    v = rng.normal(size=(npairs, d)) + 1j * rng.normal(size=(npairs, d))
    v /= np.linalg.norm(v, axis=1, keepdims=True)
    return v


def subseed(seed: int, *key: int) -> np.random.SeedSequence:
    """Derive a child seed from (seed, key) so streams are schedule-independent."""
    return np.random.SeedSequence(entropy=(int(seed),) + tuple(int(k) for k in key))


def integrate_ball_mc(
    f: Callable[[np.ndarray], complex],
    weight_exponent: float,
    d: int,
    samples: int,
    seed: int | np.random.SeedSequence,
    proposal_boundary_exponent: Optional[float] = None,
) -> Tuple[complex, float]:
    """Monte Carlo estimate of integral f(z) (1-|z|^2)^(w-d-1) dz over B^d.

    Samples |z|^2 from the Beta(d, b) distribution and the direction
    uniformly from the sphere, in antithetic pairs (z, -z).  When
    w > d the Beta shape b = w - d matches the weight exactly, so radial
    integrands carry no weight variance.  For w <= d a proposal shape
    must be supplied via ``proposal_boundary_exponent`` (the integrand
    has to supply the decay that makes the integral converge).

    Returns (estimate, standard error).  Deterministic per seed.
    """
    if samples < 1:
        raise ValueError(f"samples must be >= 1, got {samples}")
    if weight_exponent > d:
        b = weight_exponent - d
    elif proposal_boundary_exponent is not None and proposal_boundary_exponent > 0:
        b = proposal_boundary_exponent
    else:
        raise DivergentWeightError(
            f"weight exponent {weight_exponent} <= d = {d}: supply a positive "
            "proposal_boundary_exponent matched to the integrand's decay"
        )
    ss = seed if isinstance(seed, np.random.SeedSequence) else np.random.SeedSequence(int(seed))
    rng = np.random.default_rng(ss)

    npairs = (samples + 1) // 2
    t = rng.beta(d, b, size=npairs)
    zeta = _sphere_directions(rng, npairs, d)
    pts = np.sqrt(t)[:, None] * zeta

    # importance weight: target radial density prop to t^(d-1)(1-t)^(w-d-1),
    # proposal Beta(d, b) prop to t^(d-1)(1-t)^(b-1); scale folds in the
    # sphere area and the Beta normalization.
    log_beta = math.lgamma(d) + math.lgamma(b) - math.lgamma(d + b)
    scale = math.pi**d / math.gamma(d) * math.exp(log_beta)
    wexp = weight_exponent - d - b
    weights = (1.0 - t) ** wexp  # ones when w > d and b = w - d

    vals = np.empty(npairs, dtype=complex)
    for i in range(npairs):
        va = f(pts[i])
        vb = f(-pts[i])
        if not (np.isfinite(va) and np.isfinite(vb)):
            bad = pts[i] if not np.isfinite(va) else -pts[i]
            raise NonFiniteSampleError(bad, va if not np.isfinite(va) else vb)
        vals[i] = 0.5 * (va + vb) * weights[i]

    est = scale * np.mean(vals)
    if npairs > 1:
        # np.std of a complex sample is the magnitude spread
        stderr = float(abs(scale) * np.std(vals, ddof=1) / math.sqrt(npairs))
    else:
        stderr = float("inf")
    return complex(est), stderr
