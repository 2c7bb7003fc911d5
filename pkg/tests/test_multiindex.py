"""Basis enumeration and multi-index arithmetic."""

import itertools
import math

import pytest

from bergman.multiindex import (
    add,
    basis_index,
    degree,
    enumerate_basis,
    factorial,
    multinomial,
    subtract,
)


def brute_force_count(d, M):
    return sum(
        1 for m in itertools.product(range(M + 1), repeat=d) if sum(m) <= M
    )


class TestEnumerateBasis:
    def test_one_dim(self):
        assert enumerate_basis(1, 2) == ((0,), (1,), (2,))

    def test_graded_lex_two_dim(self):
        assert enumerate_basis(2, 1) == ((0, 0), (1, 0), (0, 1))

    def test_count_matches_brute_force(self):
        # independent enumeration oracle
        assert len(enumerate_basis(3, 4)) == brute_force_count(3, 4) == 35
        for d in (1, 2, 3):
            for M in range(5):
                assert len(enumerate_basis(d, M)) == brute_force_count(d, M)
                assert len(enumerate_basis(d, M)) == math.comb(M + d, d)

    def test_truncation_is_prefix(self):
        full = enumerate_basis(2, 5)
        for M in range(5):
            part = enumerate_basis(2, M)
            assert full[: len(part)] == part

    def test_degrees_non_decreasing(self):
        basis = enumerate_basis(3, 6)
        degs = [degree(m) for m in basis]
        assert degs == sorted(degs)

    def test_all_distinct(self):
        basis = enumerate_basis(3, 6)
        assert len(set(basis)) == len(basis)

    def test_rejects_bad_inputs(self):
        with pytest.raises(ValueError):
            enumerate_basis(0, 3)
        with pytest.raises(ValueError):
            enumerate_basis(2, -1)


class TestArithmetic:
    def test_factorial(self):
        assert factorial((3, 2, 0)) == 12
        assert factorial((0, 0)) == 1

    def test_add_subtract(self):
        assert add((1, 2), (0, 3)) == (1, 5)
        assert subtract((1, 5), (0, 3)) == (1, 2)
        assert subtract((1, 0), (0, 1)) is None

    def test_multinomial(self):
        assert multinomial(3, (2, 1)) == 3
        assert multinomial(4, (2, 2)) == 6
        with pytest.raises(ValueError):
            multinomial(3, (1, 1))

    def test_basis_index(self):
        basis = enumerate_basis(2, 4)
        for i, m in enumerate(basis):
            assert basis_index(basis, m) == i
        with pytest.raises(KeyError):
            basis_index(basis, (5, 0))
