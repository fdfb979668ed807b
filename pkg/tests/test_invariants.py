from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gradmod.errors import IdentityViolation, TruncationError
from gradmod.invariants import (
    HPolynomial,
    basic_invariants,
    check_e_bound,
    divide_one_minus_z,
    format_zpoly,
    h_polynomial_from_values,
    one_minus_z_power,
    parse_zpoly,
    poly_mul,
    splitting_from_hilbert,
    times_one_minus_z,
)
from gradmod.truncated import Presentation


def test_h_polynomial_from_values():
    # dim 1, H = 2, 3, 3, 3, ...
    h = h_polynomial_from_values([2, 3, 3, 3, 3, 3], 1)
    assert h.coeffs == (2, 1)
    assert h.e == 3
    # dim 1, H = 2, 2, 3, 3, ...
    assert h_polynomial_from_values([2, 2, 3, 3, 3, 3], 1).coeffs == (2, 0, 1)


def test_h_polynomial_needs_trailing_zeros():
    with pytest.raises(TruncationError):
        h_polynomial_from_values([2, 3, 4, 5], 1)


def test_series_inverts_numerator():
    h = HPolynomial((4, 1, 3, -1), 2)
    values = h.series(12)
    assert h_polynomial_from_values(values, 2) == h


def test_hilbert_coefficients():
    h = HPolynomial(tuple(parse_zpoly("3 + 4*z + (1 - z)^4")), 3)
    assert h.coeffs == (4, 0, 6, -4, 1)
    assert h.e_list() == [7, 4, 0, 0]
    assert HPolynomial((2, 0, 1), 1).e_list() == [3, 2]


@given(st.lists(st.integers(-5, 5), min_size=1, max_size=6), st.integers(0, 3))
def test_divide_inverts_multiply(coeffs, k):
    prod = poly_mul(coeffs, one_minus_z_power(k))
    q = divide_one_minus_z(prod, k)
    trimmed = list(coeffs)
    while trimmed and trimmed[-1] == 0:
        trimmed.pop()
    assert q == trimmed


def test_divide_rejects_non_multiple():
    assert divide_one_minus_z([1, 1], 1) is None


def test_times_one_minus_z():
    assert times_one_minus_z([1, 2, 3, 4], 1) == [1, 1, 1, 1]
    assert times_one_minus_z([1, 2, 3, 4], 2) == [1, 0, 0, 0]


def test_format_and_parse():
    assert format_zpoly([3, 0, 3, -1]) == "3 + 3*z^2 - z^3"
    assert format_zpoly([]) == "0"
    assert parse_zpoly("2 + z^2") == [2, 0, 1]
    assert parse_zpoly(format_zpoly([-1, 4, 0, -7])) == [-1, 4, 0, -7]


def test_splitting_type():
    assert splitting_from_hilbert([2, 1, 0, 0]).a == (1, 2)
    assert splitting_from_hilbert([3, 2, 1]).a == (1, 2, 3)
    assert splitting_from_hilbert([4, 3, 0]).a == (1, 2, 2, 2)
    with pytest.raises(IdentityViolation):
        splitting_from_hilbert([1, 2])


def test_basic_invariants():
    P = Presentation.from_strings([["y^2", "0"], ["x", "y"]], ["x", "y"], 32003)
    assert basic_invariants(P) == (2, 1, 3, 1)


def test_e_bound():
    assert check_e_bound(4, 2, 2).equality
    assert not check_e_bound(5, 2, 2).equality
    with pytest.raises(IdentityViolation):
        check_e_bound(3, 2, 2)
