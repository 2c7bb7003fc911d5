"""Toeplitz operator constructions on generalized Bergman spaces.

Three constructions are implemented, all producing matrices in the
orthonormal basis of normalized monomials e_m = z^m / ||z^m||, truncated
at total degree M:

* exact matrices for polynomial symbols, via the adjoint-of-shift
  identity T_{conj(z)^b z^a} = (M_{z^b})^* M_{z^a}, which stays a bounded
  operator for every lam > 0;
* a Sobolev-form sesquilinear entry that moves the symbol and the basis
  vectors under the diagonal operator C at level lam + 2n, which agrees
  with the polynomial construction and extends it to smooth bounded
  symbols;
* Hilbert-Schmidt matrices for symbols integrable (or square-integrable)
  against the hyperbolic volume, where every entry carries the
  normalization c_lam and the whole operator vanishes identically when
  c_lam = 0.

The Berezin integral kernel F_lam and the transform it generates connect
the Hilbert-Schmidt norm to a quadratic form, giving a second, matrix-free
route to the same number.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from typing import Callable, Dict, Optional, Tuple, Union

import numpy as np
from scipy.special import hyp2f1

from .multiindex import (
    MultiIndex,
    add,
    degree,
    enumerate_basis,
    basis_index,
    subtract,
)
from .polynomials import HoloPoly, MixedPoly, mixed_product
from .quadrature import (
    QuadratureRule,
    RadialProfile,
    integrate_ball_exact,
    integrate_ball_mc,
    subseed,
)
from .spaces import (
    SpaceParams,
    apply_C,
    as_ball_point,
    basis_normalizer,
    c_lambda_value,
    gamma_ratio,
    monomial_norm_sq,
)


@dataclass(frozen=True)
class GenericSymbol:
    """Evaluable symbol with a declared integrability class.

    For the Sobolev-form construction the caller must also supply the
    mixed radial derivatives: ``derivatives[(k, l)]`` evaluates
    Nbar^k N^l phi at a point, for 0 <= k, l <= n.  Numerical
    differentiation is deliberately not attempted here.
    """

    fn: Callable[[np.ndarray], complex]
    klass: str = "bounded"  # "bounded" | "L1" | "L2" | "smooth"
    derivatives: Optional[Dict[Tuple[int, int], Callable[[np.ndarray], complex]]] = None


SymbolSpec = Union[MixedPoly, RadialProfile, GenericSymbol]


@dataclass
class OperatorMatrix:
    """Dense matrix of an operator in the graded normalized-monomial basis.

    entries[i, j] = <e_{basis[i]}, T e_{basis[j]}> at the space's lam.
    """

    params: SpaceParams
    degree: int
    basis: Tuple[MultiIndex, ...]
    entries: np.ndarray

    @property
    def dim(self) -> int:
        return len(self.basis)

    def is_hermitian(self, tol: float = 1e-12) -> bool:
        return bool(np.allclose(self.entries, self.entries.conj().T, atol=tol, rtol=0.0))

    def is_diagonal(self, tol: float = 0.0) -> bool:
        off = self.entries - np.diag(np.diag(self.entries))
        return bool(np.max(np.abs(off), initial=0.0) <= tol)

    def diagonal(self) -> np.ndarray:
        return np.diag(self.entries)

    def eigenvalues(self) -> np.ndarray:
        """Real spectrum; requires a Hermitian matrix."""
        if not self.is_hermitian(tol=1e-10):
            raise ValueError("eigenvalues requested for a non-Hermitian matrix")
        return np.linalg.eigvalsh(self.entries)

    def operator_norm(self) -> float:
        """Largest singular value of the truncation."""
        if self.dim == 0:
            return 0.0
        return float(np.linalg.norm(self.entries, 2))

    def frobenius_norm(self) -> float:
        return float(np.linalg.norm(self.entries, "fro"))

    # -- serialization ------------------------------------------------------

    def to_json(self) -> str:
        payload = {
            "d": self.params.d,
            "lambda": self.params.lam,
            "n": self.params.n,
            "M": self.degree,
            "basis": [list(m) for m in self.basis],
            "entries": [[v.real, v.imag] for v in self.entries.ravel(order="C")],
        }
        return json.dumps(payload)

    @staticmethod
    def from_json(text: str) -> "OperatorMatrix":
        payload = json.loads(text)
        basis = tuple(tuple(m) for m in payload["basis"])
        dim = len(basis)
        flat = np.array([complex(re, im) for re, im in payload["entries"]])
        return OperatorMatrix(
            params=SpaceParams(payload["d"], payload["lambda"], payload["n"]),
            degree=payload["M"],
            basis=basis,
            entries=flat.reshape(dim, dim),
        )

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["row", "col", "re", "im"])
        for i in range(self.dim):
            for j in range(self.dim):
                v = self.entries[i, j]
                writer.writerow([i, j, repr(float(v.real)), repr(float(v.imag))])
        return buf.getvalue()

    @staticmethod
    def entries_from_csv(text: str) -> np.ndarray:
        rows = list(csv.reader(io.StringIO(text)))
        dim = int(math.isqrt(len(rows) - 1))
        out = np.zeros((dim, dim), dtype=complex)
        for row, col, re, im in rows[1:]:
            out[int(row), int(col)] = complex(float(re), float(im))
        return out


def _empty_matrix(params: SpaceParams, M: int) -> OperatorMatrix:
    basis = enumerate_basis(params.d, M)
    return OperatorMatrix(
        params=params,
        degree=M,
        basis=basis,
        entries=np.zeros((len(basis), len(basis)), dtype=complex),
    )


# ---------------------------------------------------------------------------
# polynomial symbols
# ---------------------------------------------------------------------------

def multiplication_matrix(a: MultiIndex, params: SpaceParams, M: int) -> OperatorMatrix:
    """Matrix of f -> z^a f, truncated at total degree M.

    Column m maps to row m + a with entry ||z^(m+a)|| / ||z^m||; columns
    whose image exceeds degree M are dropped.
    """
    a = tuple(a)
    out = _empty_matrix(params, M)
    lam = params.lam
    for j, m in enumerate(out.basis):
        target = add(m, a)
        if degree(target) > M:
            continue
        i = basis_index(out.basis, target)
        out.entries[i, j] = math.sqrt(monomial_norm_sq(target, lam) / monomial_norm_sq(m, lam))
    return out


def toeplitz_poly_matrix(phi: MixedPoly, params: SpaceParams, M: int) -> OperatorMatrix:
    """Exact Toeplitz matrix for a polynomial symbol, any lam > 0.

    Assembled term by term from the raw-basis rule

        <z^l, T_{conj(z)^b z^a} z^m> = [l + b = m + a] (m+a)! G(lam)/G(lam+|m+a|),

    then rescaled to the normalized basis at the boundary.
    """
    if phi.d != params.d:
        raise ValueError(f"symbol dimension {phi.d} does not match space dimension {params.d}")
    out = _empty_matrix(params, M)
    lam = params.lam
    scales = [basis_normalizer(m, lam) for m in out.basis]
    for (a, b), c in phi.coeffs.items():
        for j, m in enumerate(out.basis):
            ma = add(m, a)
            l = subtract(ma, b)
            if l is None or degree(l) > M:
                continue
            i = basis_index(out.basis, l)
            raw = monomial_norm_sq(ma, lam)  # (m+a)! Gamma(lam)/Gamma(lam+|m+a|)
            # grouping keeps conjugate-symbol assembly an exact conjugate
            out.entries[i, j] += c * (raw * (scales[i] * scales[j]))
    return out


# ---------------------------------------------------------------------------
# Sobolev-form construction
# ---------------------------------------------------------------------------

def c_operator_expansion(params: SpaceParams) -> Dict[Tuple[int, int, int, int], float]:
    """Expand C over a triple product into slot monomials.

    When C acts on conj(f) phi g, the number operator only sees the phi
    and g slots while its conjugate only sees the phi and f slots.  The
    expansion coefficients A[(j, k, l, m)] multiply
    conj(N^j f) * (Nbar^k N^l phi) * (N^m g) and are generated here by
    polynomial multiplication in four commuting slot variables.
    """
    lam, n = params.lam, params.n
    terms: Dict[Tuple[int, int, int, int], float] = {(0, 0, 0, 0): 1.0}

    def multiply(terms, slots, denom):
        out: Dict[Tuple[int, int, int, int], float] = {}
        for key, coef in terms.items():
            out[key] = out.get(key, 0.0) + coef
            for slot in slots:
                bumped = list(key)
                bumped[slot] += 1
                bk = tuple(bumped)
                out[bk] = out.get(bk, 0.0) + coef / denom
        return out

    # slots: 0 = Nbar on f, 1 = Nbar on phi, 2 = N on phi, 3 = N on g
    for j in range(n, 2 * n):
        terms = multiply(terms, (0, 1), lam + j)
    for j in range(0, n):
        terms = multiply(terms, (2, 3), lam + j)
    return terms


def toeplitz_sobolev_entry(
    f: HoloPoly,
    g: HoloPoly,
    phi: SymbolSpec,
    params: SpaceParams,
    mc_samples: int = 200_000,
    seed: int = 0,
    with_error: bool = False,
):
    """Matrix entry <f, T_phi g> through the level lam + 2n form.

    The entry is c_{lam+2n} times the integral of C[conj(f) phi g]
    against (1-|z|^2)^(lam+2n) dtau.  Polynomial symbols integrate
    exactly; generic symbols must carry their mixed radial derivatives
    and are integrated by Monte Carlo.
    """
    lam, n, d = params.lam, params.n, params.d
    sigma = lam + 2 * n
    c_sigma = c_lambda_value(d, sigma)

    if isinstance(phi, MixedPoly):
        integrand = apply_C(mixed_product(f, phi, g), params)
        value = c_sigma * integrate_ball_exact(integrand, sigma, d)
        return (complex(value), 0.0) if with_error else complex(value)

    if isinstance(phi, RadialProfile):
        raise TypeError(
            "radial profiles carry no derivative evaluables; wrap the symbol in a "
            "GenericSymbol with derivatives[(k, l)] = Nbar^k N^l phi"
        )
    if not isinstance(phi, GenericSymbol):
        raise TypeError(f"unsupported symbol type {type(phi).__name__}")
    if phi.derivatives is None:
        raise ValueError(
            "generic symbols need derivatives[(k, l)] = Nbar^k N^l phi "
            f"for 0 <= k, l <= n = {n}; numerical differentiation is not performed"
        )

    expansion = c_operator_expansion(params)
    f_pows = [f.map_by_degree(lambda kk, p=p: float(kk) ** p if p else 1.0) for p in range(n + 1)]
    g_pows = [g.map_by_degree(lambda kk, p=p: float(kk) ** p if p else 1.0) for p in range(n + 1)]

    def integrand_fn(z: np.ndarray) -> complex:
        total = 0.0 + 0.0j
        for (jf, kphi, lphi, mg), coef in expansion.items():
            psi = phi.derivatives[(kphi, lphi)](z) if (kphi, lphi) != (0, 0) else phi.fn(z)
            total += coef * np.conj(f_pows[jf](z)) * psi * g_pows[mg](z)
        return total

    est, err = integrate_ball_mc(integrand_fn, sigma, d, mc_samples, seed)
    value = c_sigma * est
    return (complex(value), abs(c_sigma) * err) if with_error else complex(value)


# ---------------------------------------------------------------------------
# Hilbert-Schmidt construction
# ---------------------------------------------------------------------------

def _check_hs_class(klass: str, params: SpaceParams):
    lam, d = params.lam, params.d
    if klass == "L2":
        if lam <= d / 2:
            raise ValueError(f"L2 symbols need lam > d/2, got lam = {lam}, d = {d}")
    elif klass == "L1":
        pass  # any lam > 0
    elif klass in ("bounded", "smooth"):
        if lam <= d:
            raise ValueError(
                f"symbols without decay need lam > d for the integral form, got lam = {lam}"
            )
    else:
        raise ValueError(f"unknown integrability class {klass!r}")


def hs_matrix(
    phi: SymbolSpec,
    params: SpaceParams,
    M: int,
    mc_samples: int = 100_000,
    seed: int = 0,
) -> OperatorMatrix:
    """Matrix with entries c_lam * integral of conj(e_l) phi e_m against (1-|z|^2)^lam dtau.

    Identically zero whenever c_lam = 0 (integer lam <= d), for any
    integrable symbol.  Radial profiles give a diagonal matrix constant
    on degree shells; polynomial symbols integrate exactly (lam > d);
    generic symbols use per-entry Monte Carlo with sub-seeds derived from
    (seed, l, m) so the matrix is reproducible under any scheduling.
    """
    lam, d = params.lam, params.d
    out = _empty_matrix(params, M)
    c_lam = params.c_lambda
    if c_lam == 0.0:
        return out

    if isinstance(phi, MixedPoly):
        _check_hs_class("bounded", params)
        scales = [basis_normalizer(m, lam) for m in out.basis]
        for (a, b), c in phi.coeffs.items():
            for j, m in enumerate(out.basis):
                # sphere orthogonality: nonzero only when l + b = m + a
                l = subtract(add(m, a), b)
                if l is None or degree(l) > M:
                    continue
                i = basis_index(out.basis, l)
                term = MixedPoly.term(d, add(m, a), add(l, b))
                out.entries[i, j] += (
                    c * c_lam * scales[i] * scales[j] * integrate_ball_exact(term, lam, d)
                )
        return out

    if isinstance(phi, RadialProfile):
        _check_hs_class(phi.klass, params)
        # sphere orthogonality makes the matrix diagonal and constant on
        # degree shells: a_mm = c_lam pi^d I_k / (gr(lam,k) (d-1+|m|)!)
        # with I_k the radial integral of g against t^(k+d-1)(1-t)^(lam-d-1)
        alpha = lam - d - 1.0 + phi.boundary_exponent
        shells: Dict[int, complex] = {}
        for i, m in enumerate(out.basis):
            k = degree(m)
            if k not in shells:
                rule = QuadratureRule.gauss_jacobi(alpha, d - 1.0 + k)
                radial = rule.integrate(phi.smooth)
                shells[k] = (
                    math.pi**d * radial / (gamma_ratio(lam, k) * math.factorial(d - 1 + k))
                )
            out.entries[i, i] = c_lam * shells[k]
        return out

    if isinstance(phi, GenericSymbol):
        _check_hs_class(phi.klass, params)
        scales = [basis_normalizer(m, lam) for m in out.basis]
        for i, l in enumerate(out.basis):
            for j, m in enumerate(out.basis):
                def integrand(z, l=l, m=m):
                    zc = np.conj(z)
                    mono = np.prod(zc ** np.array(l)) * np.prod(z ** np.array(m))
                    return mono * phi.fn(z)

                est, _ = integrate_ball_mc(
                    integrand, lam, d, mc_samples, subseed(seed, i, j)
                )
                out.entries[i, j] = c_lam * scales[i] * scales[j] * est
        return out

    raise TypeError(f"unsupported symbol type {type(phi).__name__}")


def hs_norm_via_entries(matrix: OperatorMatrix) -> float:
    """Frobenius norm of the truncated matrix; non-decreasing in M."""
    return matrix.frobenius_norm()


# ---------------------------------------------------------------------------
# Berezin kernel and transform
# ---------------------------------------------------------------------------

def berezin_kernel(z, w, params: SpaceParams) -> float:
    """F_lam(z, w) = c_lam^2 [ (1-|z|^2)(1-|w|^2) / |1 - conj(z).w|^2 ]^lam.

    Real, symmetric, invariant under simultaneous automorphisms of both
    arguments, and bounded by c_lam^2.
    """
    z = as_ball_point(z, params.d)
    w = as_ball_point(w, params.d)
    tz = np.vdot(z, z).real
    tw = np.vdot(w, w).real
    den = abs(1.0 - np.dot(np.conj(z), w)) ** 2
    c = params.c_lambda
    return float(c * c * ((1.0 - tz) * (1.0 - tw) / den) ** params.lam)


def _berezin_radial_value(
    g: RadialProfile, t_z: float, params: SpaceParams, nodes: int = 64
) -> complex:
    """Transform of a radial symbol at |z|^2 = t_z.

    The direction average of |1 - conj(z).w|^(-2 lam) over the sphere
    collapses to the Gauss hypergeometric factor 2F1(lam, lam; d; u t_z),
    leaving a single Jacobi integral in u = |w|^2.
    """
    lam, d = params.lam, params.d
    alpha = lam - d - 1.0 + g.boundary_exponent
    rule = QuadratureRule.gauss_jacobi(alpha, d - 1.0, nodes)
    series = hyp2f1(lam, lam, d, rule.nodes * t_z)
    vals = np.array([g.smooth(u) for u in rule.nodes], dtype=complex)
    integral = np.sum(rule.weights * vals * series)
    c = params.c_lambda
    return complex(c * c * (1.0 - t_z) ** lam * math.pi**d / math.gamma(d) * integral)


def berezin_transform(
    phi: SymbolSpec,
    z,
    params: SpaceParams,
    rule: Optional[QuadratureRule] = None,
    mc_samples: int = 200_000,
    seed: int = 0,
    proposal_boundary_exponent: Optional[float] = None,
) -> complex:
    """A_lam phi(z) = integral of F_lam(z, w) phi(w) dtau(w).

    Equals c_lam times the coherent-state expectation of T_phi at z.
    Radial symbols use the hypergeometric reduction; polynomial and
    generic symbols fall back to Monte Carlo over w.  Identically zero
    when c_lam = 0.
    """
    z = as_ball_point(z, params.d)
    if params.c_lambda == 0.0:
        return 0.0 + 0.0j

    if isinstance(phi, RadialProfile):
        _check_hs_class(phi.klass, params)
        nodes = len(rule.nodes) if rule is not None else 64
        return _berezin_radial_value(phi, np.vdot(z, z).real, params, nodes)

    if isinstance(phi, MixedPoly):
        fn = phi
        klass = "bounded"
    elif isinstance(phi, GenericSymbol):
        fn = phi.fn
        klass = phi.klass
    else:
        raise TypeError(f"unsupported symbol type {type(phi).__name__}")
    _check_hs_class(klass, params)

    lam, d = params.lam, params.d
    c = params.c_lambda
    t_z = np.vdot(z, z).real
    zc = np.conj(z)

    # split off the (1-|w|^2)^lam factor of F_lam: together with the tau
    # density it forms the sampling weight (1-|w|^2)^(lam-d-1)
    def smooth_factor(w: np.ndarray) -> complex:
        den = abs(1.0 - np.dot(zc, w)) ** 2
        return c * c * ((1.0 - t_z) / den) ** lam * fn(w)

    est, _ = integrate_ball_mc(
        smooth_factor, lam, d, mc_samples, seed,
        proposal_boundary_exponent=proposal_boundary_exponent,
    )
    return complex(est)


def hs_norm_via_berezin(
    phi: SymbolSpec,
    params: SpaceParams,
    rule: Optional[QuadratureRule] = None,
    nodes: int = 64,
) -> float:
    """sqrt of <phi, A_lam phi> over L2(tau), the matrix-free norm route.

    Implemented for radial profiles by nested Jacobi quadrature with the
    sphere average collapsed to the hypergeometric factor.  Dominates the
    truncated-entry norm at every M and matches it in the limit.
    """
    if params.c_lambda == 0.0:
        return 0.0
    if not isinstance(phi, RadialProfile):
        raise TypeError("the quadratic-form norm route is implemented for radial symbols")
    _check_hs_class(phi.klass, params)

    lam, d, s = params.lam, params.d, phi.boundary_exponent
    alpha = lam + s - d - 1.0
    if rule is None:
        rule = QuadratureRule.gauss_jacobi(alpha, d - 1.0, nodes)
    t, wts = rule.nodes, rule.weights
    h = np.array([phi.smooth(x) for x in t], dtype=complex)

    total = 0.0
    for i in range(len(t)):
        series = hyp2f1(lam, lam, d, t[i] * t)
        inner = np.sum(wts * h * series)
        total += (np.conj(h[i]) * wts[i] * inner).real
    pref = (math.pi**d / math.gamma(d)) ** 2 * params.c_lambda**2
    val = pref * total
    if val < 0:
        raise ArithmeticError(f"quadratic form evaluated to {val} < 0; quadrature failed")
    return math.sqrt(val)
