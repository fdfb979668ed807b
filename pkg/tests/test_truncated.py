from __future__ import annotations

import pytest

from gradmod.errors import PresentationError, TruncationError
from gradmod.poly import MultiPolynomial
from gradmod.truncated import (
    Presentation,
    TruncatedModule,
    colon_length,
    colon_quotient_length,
    colon_quotient_lengths,
    graded_quotient_lengths,
    hilbert_value,
    image_span,
    submodule_lengths,
    vv_lengths,
)
from oracle import DenseModel

p = 32003


def pres(rows, names=("x", "y")):
    return Presentation.from_strings(rows, list(names), p)


def as_dicts(P: Presentation):
    return [[dict(f.terms) for f in row] for row in P.rows]


CASE_1_3 = [["y^2", "0"], ["x^2", "y"]]
CASE_1_4 = [["y^2", "0"], ["x", "y"]]
CASE_2_4 = [["x", "y", "0"], ["x^2", "x^2", "0"], ["0", "0", "x^2"]]


def test_presentation_validation():
    with pytest.raises(PresentationError, match="not minimal"):
        pres([["1 + x", "0"], ["0", "y"]])
    with pytest.raises(PresentationError, match="determinant is zero"):
        pres([["x", "y"], ["x", "y"]])
    with pytest.raises(PresentationError):
        Presentation([[MultiPolynomial.variable(0, 2, p)], [MultiPolynomial.variable(1, 2, p)]])


def test_basic_shape_data():
    P = pres(CASE_1_4)
    assert P.r == 2 and P.dim == 1
    assert P.min_order == 1
    assert P.det_order == 3
    assert P.entry_orders()[0][1] == float("inf")


def test_image_rank_matches_dense_oracle():
    P = pres(CASE_1_4)
    model = DenseModel(as_dicts(P), 2, 4)
    from oracle import rank_mod_p

    assert image_span(P, 4).rank == rank_mod_p(model.image()) == 17


@pytest.mark.parametrize("rows,names", [
    (CASE_1_3, ("x", "y")),
    (CASE_1_4, ("x", "y")),
    (CASE_2_4, ("x", "y")),
    ([["x", "y", "z"], ["x^2", "x^2", "0"], ["0", "0", "x^2"]], ("x", "y", "z")),
])
def test_hilbert_function_matches_dense_oracle(rows, names):
    P = pres(rows, names)
    D = 6
    module = TruncatedModule(P, D)
    model = DenseModel(as_dicts(P), len(names), D)
    assert module.hilbert == [model.hilbert(n) for n in range(D + 1)]


def test_hilbert_values_from_the_examples():
    # l(M/nM), l(nM/n^2M), l(n^2M/n^3M) as computed by hand for these two matrices
    assert TruncatedModule(pres(CASE_1_3), 8).hilbert[:3] == [2, 3, 3]
    assert TruncatedModule(pres(CASE_1_4), 8).hilbert[:3] == [2, 2, 3]


def test_diagonal_closed_form():
    # Q/(y^a) in two variables has H(n) = min(n + 1, a)
    a = (1, 2, 3)
    P = pres([["y", "0", "0"], ["0", "y^2", "0"], ["0", "0", "y^3"]])
    module = TruncatedModule(P, 10)
    assert module.hilbert == [sum(min(n + 1, k) for k in a) for n in range(11)]


def test_window_growth_does_not_change_values():
    P = pres(CASE_2_4)
    small, big = TruncatedModule(P, 8), TruncatedModule(P, 10)
    assert small.hilbert == big.hilbert[:9]


def test_hilbert_value_refuses_outside_window():
    module = TruncatedModule(pres(CASE_1_3), 5)
    assert hilbert_value(module, 5) == module.hilbert[5]
    with pytest.raises(TruncationError):
        hilbert_value(module, 6)


@pytest.mark.parametrize("rows,coeffs", [
    (CASE_1_4, [3, 5]),
    (CASE_1_4, [1, 0]),
    (CASE_1_3, [2, 9]),
    (CASE_2_4, [1, 4]),
    (CASE_2_4, [0, 1]),
])
def test_colon_lengths_match_dense_oracle(rows, coeffs):
    P = pres(rows)
    D = 7
    module = TruncatedModule(P, D)
    model = DenseModel(as_dicts(P), 2, D)
    x = MultiPolynomial.linear_form(coeffs, p)
    expected = [model.colon_length(coeffs, n) for n in range(D)]
    assert [colon_length(module, n, x) for n in range(D)] == expected
    assert colon_quotient_lengths(module, [module.mult_map(x)], D - 1) == expected


def test_multi_map_colon_paths_agree():
    module = TruncatedModule(pres(CASE_2_4), 8)
    maps = [module.variable_map(0), module.variable_map(1)]
    one_pass = colon_quotient_lengths(module, maps, 7)
    assert one_pass == [colon_quotient_length(module, maps, n) for n in range(8)]


def test_mult_map_matches_polynomial_product():
    module = TruncatedModule(pres(CASE_1_3), 6)
    x = MultiPolynomial.linear_form([2, 3], p)
    f = x * x
    via_square = module.mult_map(f)
    xm = module.mult_map(x)
    for q in range(module.size):
        assert via_square({q: 1}) == xm(xm({q: 1}))


def test_relations_hold_in_normal_form():
    # y^2 e1 + x e2 = 0 and y e2 = 0 in M for the second example
    module = TruncatedModule(pres(CASE_1_4), 6)
    e1, e2 = module.generator(0), module.generator(1)
    X, Y = module.variable_map(0), module.variable_map(1)
    total = dict(Y(Y(e1)))
    for k, v in X(e2).items():
        total[k] = (total.get(k, 0) + v) % p
    assert not any(total.values())
    assert not Y(e2)


def test_reduction_lengths_and_series():
    module = TruncatedModule(pres(CASE_1_4), 10)
    J = [module.mult_map(MultiPolynomial.linear_form([1, 7], p))]
    data = submodule_lengths(module, J)
    assert data.red == 2
    assert data.rho[:3] == (1, 1, 0)
    assert graded_quotient_lengths(module, data) == (2, 1, 1)
    assert all(v >= 0 for v in vv_lengths(module, data))

    diag = TruncatedModule(pres([["y^2", "0"], ["0", "y^2"]]), 10)
    data = submodule_lengths(diag, [diag.mult_map(MultiPolynomial.linear_form([2, 1], p))])
    assert graded_quotient_lengths(diag, data) == (2, 2, 0)


def test_reduction_number_needs_window():
    module = TruncatedModule(pres(CASE_1_4), 2)
    with pytest.raises(TruncationError):
        submodule_lengths(module, [])
