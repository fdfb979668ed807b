from __future__ import annotations

import pytest

from gradmod.depth import cm_flag, cross_certify, depth_G, leading_true
from gradmod.errors import IdentityViolation
from gradmod.invariants import HPolynomial


def tower(*hs, dim=None):
    d = len(hs) - 1
    return [HPolynomial(tuple(h), d - i) for i, h in enumerate(hs)]


def test_depth_from_agreement():
    assert depth_G(tower((2, 1), (2, 1))).depth == 1
    assert depth_G(tower((2, 0, 1), (2, 1))).depth == 0
    cert = depth_G(tower((3, 1, 1), (3, 1, 1), (3, 2)))
    assert cert.depth == 1 and cert.agreement_index == 0


def test_dimension_zero_convention():
    cert = depth_G(tower((1,)))
    assert cert.depth == 0
    assert cm_flag(cert, 0)


def test_nestedness_is_enforced():
    with pytest.raises(IdentityViolation):
        depth_G(tower((3, 0, 1), (3, 1), (3, 1)))


def test_cm_flag():
    assert cm_flag(depth_G(tower((2, 1), (2, 1))), 1)
    assert not cm_flag(depth_G(tower((2, 0, 1), (2, 1))), 1)
    cert = depth_G(tower((4, 2, 1), (4, 2, 1), (4, 2, 1), (4, 3)))
    assert cert.depth == 2 and not cm_flag(cert, 3)


def test_leading_true():
    assert leading_true([True, True, False, True]) == 2
    assert leading_true([]) == 0


def test_cross_certify():
    cert = depth_G(tower((3, 1, 1), (3, 1, 1), (3, 2)))
    out = cross_certify(cert, [True, False], [True, False])
    assert out.regular_prefix == 1 and out.r_zero_prefix == 1
    with pytest.raises(IdentityViolation):
        cross_certify(cert, [False, False], [True, False])
    with pytest.raises(IdentityViolation):
        cross_certify(cert, [True, True], [True, False])
