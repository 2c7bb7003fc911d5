"""The inline symbol grammar and its canonical printer."""

import numpy as np
import pytest

from bergman.polynomials import MixedPoly
from bergman.symbols import SymbolParseError, parse_symbol, poly_to_string


class TestParse:
    def test_monomial_product(self):
        p = parse_symbol("z1*z2", 2)
        assert p.coeffs == {((1, 1), (0, 0)): 1.0 + 0.0j}

    def test_conjugate_pair(self):
        p = parse_symbol("conj(z1)*z1", 2)
        assert p.coeffs == {((1, 0), (1, 0)): 1.0 + 0.0j}

    def test_abs2(self):
        assert parse_symbol("abs2(z)", 3).coeffs == MixedPoly.abs2(3).coeffs

    def test_one_minus_abs2(self):
        p = parse_symbol("1 - abs2(z)", 2)
        expected = MixedPoly.constant(2) - MixedPoly.abs2(2)
        assert p.coeffs == expected.coeffs

    def test_powers_and_parens(self):
        p = parse_symbol("(1 - abs2(z))^2", 1)
        z = np.array([0.5j])
        assert p(z) == pytest.approx((1 - 0.25) ** 2)

    def test_scientific_literals(self):
        p = parse_symbol("2.5e-1 * z1", 1)
        assert p.coeffs == {((1,), (0,)): 0.25 + 0.0j}

    def test_leading_minus(self):
        p = parse_symbol("-z1 + 1", 1)
        assert p.coeffs[((1,), (0,))] == -1.0
        assert p.coeffs[((0,), (0,))] == 1.0

    def test_conj_power(self):
        p = parse_symbol("conj(z2)^3", 2)
        assert p.coeffs == {((0, 0), (0, 3)): 1.0 + 0.0j}

    def test_evaluation_matches_numpy(self):
        p = parse_symbol("0.5*z1^2*conj(z2) - 3*abs2(z) + 2", 2)
        z = np.array([0.4 + 0.1j, -0.2 + 0.3j])
        expected = 0.5 * z[0] ** 2 * np.conj(z[1]) - 3 * np.vdot(z, z).real + 2
        assert p(z) == pytest.approx(expected)


class TestParseErrors:
    @pytest.mark.parametrize(
        "bad",
        ["z1 *", "* z1", "z0", "z3", "conj(1)", "abs2(z1)", "z1 ^ 1.5",
         "z1 + + z2", "(z1", "foo", "z1^-2"],
    )
    def test_malformed_inputs(self, bad):
        with pytest.raises(SymbolParseError):
            parse_symbol(bad, 2)


class TestPrinter:
    def test_round_trip_examples(self):
        for text in ["z1*z2", "conj(z1)*z1", "1 - abs2(z)", "(1-abs2(z))^2",
                     "2*z1^3*conj(z2)^2 - 0.5"]:
            p = parse_symbol(text, 2)
            assert parse_symbol(poly_to_string(p), 2).coeffs == p.coeffs

    def test_round_trip_random_corpus(self):
        rng = np.random.default_rng(14)
        from bergman.multiindex import enumerate_basis

        basis = enumerate_basis(2, 3)
        for _ in range(40):
            coeffs = {}
            for _ in range(rng.integers(1, 6)):
                a = basis[rng.integers(len(basis))]
                b = basis[rng.integers(len(basis))]
                coeffs[(a, b)] = coeffs.get((a, b), 0.0) + round(rng.normal(), 6)
            p = MixedPoly(2, coeffs)
            printed = poly_to_string(p)
            assert parse_symbol(printed, 2).coeffs == p.coeffs
            # printing is canonical: print(parse(print)) == print
            assert poly_to_string(parse_symbol(printed, 2)) == printed

    def test_zero(self):
        assert poly_to_string(MixedPoly(1, {})) == "0"
        assert parse_symbol("0", 1).is_zero()

    def test_imaginary_coefficients_unprintable(self):
        with pytest.raises(ValueError):
            poly_to_string(MixedPoly(1, {((1,), (0,)): 1j}))
