"""Weighted and generalized Bergman spaces on the unit ball of C^d.

Spaces for every weight parameter lam > 0, three Toeplitz operator
constructions (polynomial symbols, Sobolev-form entries, Hilbert-Schmidt
operators for decaying symbols), Berezin kernels and transforms, exact
and stochastic ball quadrature, and a verification suite for the
closed-form identities and small-lambda counterexamples.
"""

from .multiindex import MultiIndex, enumerate_basis
from .polynomials import HoloPoly, MixedPoly, abs2_power, mixed_product
from .quadrature import (
    DivergentWeightError,
    QuadratureRule,
    RadialProfile,
    integrate_ball_exact,
    integrate_ball_mc,
    integrate_radial_symbol,
    radial_moment,
    sphere_monomial_integral,
)
from .spaces import (
    SpaceParams,
    apply_A,
    apply_B,
    apply_C,
    as_ball_point,
    c_lambda,
    c_lambda_value,
    gamma_ratio,
    inner_product,
    kernel_partial_sum,
    mobius,
    monomial_inner_product,
    norm_sq,
    normalized_monomial,
    number_operator,
    pointwise_bound_check,
    reproducing_kernel,
)
from .symbols import SymbolParseError, parse_symbol, poly_to_string
from .toeplitz import (
    GenericSymbol,
    OperatorMatrix,
    SymbolSpec,
    berezin_kernel,
    berezin_transform,
    hs_matrix,
    hs_norm_via_berezin,
    hs_norm_via_entries,
    multiplication_matrix,
    toeplitz_poly_matrix,
    toeplitz_sobolev_entry,
)
from .verify import (
    DEFAULT_SEED,
    SuiteConfig,
    VerificationReport,
    check_berezin_constant,
    check_hs_zero,
    check_integration_by_parts,
    check_invariance,
    check_kernel_series,
    check_laplace_identity,
    check_mult_norm,
    check_negativity,
    check_norm_growth,
    check_product_bound,
    check_shift1,
    check_shift2n,
    check_weight_recursion,
    norm_growth_sequence,
    run_suite,
)

__version__ = "0.1.0"
