from __future__ import annotations

import pytest

from gradmod.errors import IdentityViolation
from gradmod.poly import parse_polynomial
from gradmod.truncated import Presentation
from gradmod.verdicts import (
    MU2_TABLE,
    MU3_TABLE,
    MU4_E3_TABLE,
    ModuleSummary,
    classify,
    series_constraint_check,
    verify_annihilator,
)

p = 32003


def summary(mu, dim, depth, h, a, e=None, iM=1, det_order=None, red=2, ann=None):
    e = sum(h) if e is None else e
    return ModuleSummary(mu=mu, dim=dim, depth=depth, h=tuple(h), a=tuple(a), e=e, iM=iM,
                         det_order=det_order if det_order is not None else e, red=red,
                         annihilator_order=ann)


def test_table_sizes():
    assert len(MU2_TABLE) == 6
    assert len(MU3_TABLE) == 10
    assert len(MU4_E3_TABLE[7][1]) == 4


def test_mu2_unique_entry():
    v = classify(summary(2, 2, 2, [2, 1, 1], [1, 3]))
    assert v.stratum == "mu=2, a=(1, 3)"
    assert v.expected == ["CM: 2 + z + z^2"]
    assert v.matches


def test_mu2_two_entries():
    v = classify(summary(2, 3, 2, [2, 0, 1], [1, 2], red=2))
    assert v.checks[0].expected == ["CM: 2 + z", "depth 2: 2 + z^2"]
    assert v.matches


def test_mu3_three_entries_and_mismatch():
    s = summary(3, 3, 1, [3, 0, 3, -1], [1, 2, 2], det_order=5)
    v = classify(s)
    assert v.checks[0].expected == ["CM: 3 + 2*z", "depth 2: 3 + z + z^2", "depth 1: 3 + 3*z^2 - z^3"]
    assert v.matches
    wrong = summary(3, 3, 0, [3, 0, 3, -1], [1, 2, 2], det_order=5)
    assert classify(wrong).matches is False


def test_mu3_unique_entry():
    v = classify(summary(3, 1, 1, [3, 3, 1], [2, 2, 3], iM=2, det_order=7))
    assert v.expected == ["CM: 3 + 3*z + z^2"]
    assert v.matches


def test_mu4_table_drops_negative_depths():
    s = summary(4, 1, 0, [4, 2, 1], [1, 2, 2, 2], det_order=7, ann=3)
    v = classify(s)
    assert v.stratum == "mu=4, e(A)=3, e=7"
    assert v.expected == ["CM: 4 + 3*z", "depth 0: 4 + 2*z + z^2"]
    assert v.matches


def test_mu4_lowest_depth_entry():
    v = classify(summary(4, 3, 0, [4, 0, 6, -4, 1], [1, 2, 2, 2], det_order=7, ann=3))
    assert "depth 0: 4 + 6*z^2 - 4*z^3 + z^4" in v.expected
    assert v.matches


def test_mu4_needs_annihilator():
    v = classify(summary(4, 3, 0, [4, 0, 6, -4, 1], [1, 2, 2, 2], det_order=7, ann=None))
    assert v.stratum == "unclassified"
    assert v.matches is None


def test_det_order_stratum():
    v = classify(summary(5, 1, 0, [5, 0, 1], [1, 1, 1, 1, 2], det_order=6))
    names = [c.name for c in v.checks]
    assert "det order = mu+1" in names
    assert v.matches


def test_near_minimal_stratum_shape():
    ok = summary(5, 1, 0, [5, 0, 0, 1], [1, 1, 1, 1, 2], det_order=6, red=3)
    v = classify(ok)
    assert [c.name for c in v.checks] == ["e = mu*i + 1"]
    assert v.matches
    # CM must come with s = i
    bad = summary(5, 1, 1, [5, 0, 0, 1], [1, 1, 1, 1, 2], det_order=6, red=3)
    assert classify(bad).matches is False


def test_minimal_multiplicity_stratum():
    v = classify(summary(5, 2, 2, [5], [1] * 5, red=3))
    assert v.checks[-1].name == "e = mu*i"
    assert v.matches
    assert classify(summary(5, 2, 1, [5], [1] * 5, red=3)).matches is False


def test_unclassified():
    v = classify(summary(5, 2, 1, [5, 1, 1], [1, 1, 1, 2, 2], det_order=9, red=3))
    assert v.stratum == "unclassified"
    assert v.matches is None


def test_series_constraint():
    assert series_constraint_check((2, 1, 1))
    assert series_constraint_check((3, 0, 0))
    with pytest.raises(IdentityViolation):
        series_constraint_check((2, 1, 2))


def test_annihilator_membership():
    names = ["x", "y"]
    P = Presentation.from_strings([["x", "y", "0"], ["x^2", "x^2", "0"], ["0", "0", "x^2"]], names, p)
    assert verify_annihilator(P, parse_polynomial("x^2*(x - y)", names, p))
    assert verify_annihilator(P, P.det)
    assert not verify_annihilator(P, parse_polynomial("x*(x - y)", names, p))
    Q = Presentation.from_strings([["y^2", "0", "0"], ["x", "y", "0"], ["0", "0", "y"]], names, p)
    assert verify_annihilator(Q, parse_polynomial("y^3", names, p))
    assert not verify_annihilator(Q, parse_polynomial("y^2", names, p))
