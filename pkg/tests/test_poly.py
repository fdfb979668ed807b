from __future__ import annotations

import math

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from gradmod.poly import (
    DEFAULT_PRIME,
    LinearChange,
    MultiPolynomial,
    PolynomialSyntaxError,
    StructuralError,
    det_mod_p,
    inverse_mod_p,
    is_prime,
    monomials_of_degree,
    monomials_up_to,
    parse_polynomial,
    poly_adjugate,
    poly_det,
)

p = DEFAULT_PRIME
NAMES = ["x", "y", "z"]


def P(text, names=NAMES):
    return parse_polynomial(text, names, p)


def to_sympy(f: MultiPolynomial, names=NAMES):
    gens = sympy.symbols(names[: f.nvars])
    expr = sum(c * sympy.prod([g ** k for g, k in zip(gens, e)]) for e, c in f.terms.items())
    return sympy.Poly(expr, *gens, modulus=p)


def from_sympy(poly, nvars):
    return MultiPolynomial({e: int(c) % p for e, c in poly.terms()}, nvars, p)


polys = st.dictionaries(
    st.tuples(*[st.integers(0, 3)] * 3), st.integers(-p, p), max_size=5
).map(lambda t: MultiPolynomial(t, 3, p))


def test_prime_check():
    assert is_prime(32003)
    assert not is_prime(32001)
    assert not is_prime(1)


def test_monomial_counts():
    assert len(monomials_of_degree(3, 4)) == math.comb(6, 2)
    assert len(monomials_up_to(2, 5)) == math.comb(7, 2)
    degs = [sum(m) for m in monomials_up_to(3, 3)]
    assert degs == sorted(degs)


def test_order_and_degree():
    f = P("x^2*y + y^3 + x^4")
    assert f.order() == 3
    assert f.degree() == 4
    assert MultiPolynomial.zero(3, p).order() == math.inf
    assert P("x*y - y^2").initial_form() == P("x*y - y^2")
    assert P("x + y^2").initial_form() == P("x")


def test_arithmetic_small():
    assert P("(x + y)^2") == P("x^2 + 2*x*y + y^2")
    assert P("x") - P("x") == MultiPolynomial.zero(3, p)
    assert P("-1") == MultiPolynomial.constant(p - 1, 3, p)


@settings(max_examples=60, deadline=None)
@given(polys, polys)
def test_arithmetic_matches_sympy(f, g):
    assert from_sympy(to_sympy(f) * to_sympy(g), 3) == f * g
    assert from_sympy(to_sympy(f) + to_sympy(g), 3) == f + g
    assert from_sympy(to_sympy(f) - to_sympy(g), 3) == f - g


@settings(max_examples=60, deadline=None)
@given(polys, polys)
def test_division_detects_multiples(f, g):
    if g.is_zero():
        return
    assert (f * g).divisible_by(g)
    q, r = f.divmod(g)
    assert q * g + r == f


def test_division_rejects_non_multiple():
    assert not P("x^2 + y").divisible_by(P("x"))
    assert P("x^3 - x*y^2").divisible_by(P("x - y"))


def test_eliminate_last_and_change():
    f = P("x*z + y^2 + z^3")
    assert f.eliminate_last() == parse_polynomial("y^2", ["x", "y"], p)
    swap = LinearChange.permutation([2, 1, 0], p)
    assert f.apply_change(swap) == P("z*x + y^2 + x^3")
    with pytest.raises(StructuralError):
        LinearChange([[1, 1], [1, 1]], p)


def test_inverse_mod_p():
    m = [[1, 2, 0], [0, 1, 5], [3, 0, 1]]
    inv = inverse_mod_p(m, p)
    prod = [[sum(m[i][k] * inv[k][j] for k in range(3)) % p for j in range(3)] for i in range(3)]
    assert prod == [[int(i == j) for j in range(3)] for i in range(3)]
    assert det_mod_p(m, p) == sympy.Matrix(m).det() % p


def test_poly_det_against_sympy():
    rows = [["x", "y", "z"], ["x^2", "x^2", "0"], ["0", "0", "x^2"]]
    M = [[P(s) for s in r] for r in rows]
    gens = sympy.symbols(NAMES)
    expected = sympy.Matrix([[sympy.sympify(s.replace("^", "**")) for s in r] for r in rows]).det()
    assert poly_det(M) == from_sympy(sympy.Poly(expected, *gens, modulus=p), 3)


def test_adjugate_identity():
    rows = [["y^2", "0"], ["x", "y"]]
    M = [[P(s) for s in r] for r in rows]
    adj = poly_adjugate(M)
    det = poly_det(M)
    for i in range(2):
        for j in range(2):
            entry = sum((M[i][k] * adj[k][j] for k in range(2)), MultiPolynomial.zero(3, p))
            assert entry == (det if i == j else MultiPolynomial.zero(3, p))


def test_parse_errors_carry_position():
    with pytest.raises(PolynomialSyntaxError) as exc:
        parse_polynomial("x + w", ["x", "y"], p, line=4, column_offset=10)
    assert exc.value.line == 4
    assert exc.value.column >= 10
    with pytest.raises(PolynomialSyntaxError):
        parse_polynomial("x^y", ["x", "y"], p)
    with pytest.raises(PolynomialSyntaxError):
        parse_polynomial("x +", ["x", "y"], p)


def test_to_str_round_trip():
    f = P("3*x^2*y - y + 7")
    assert P(f.to_str(NAMES)) == f
