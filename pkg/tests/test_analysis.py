from __future__ import annotations

import pytest

from gradmod.analysis import analyze, regular_sequence
from gradmod.inputfile import parse_input
from gradmod.truncated import Presentation

p = 32003


def pres(rows, names=("x", "y")):
    return Presentation.from_strings(rows, list(names), p)


def test_report_for_depth_zero_example():
    report, log = analyze(pres([["y^2", "0"], ["x", "y"]]))
    d = report.to_dict()
    assert (d["mu"], d["i"], d["det_order"], d["dim"], d["e"]) == (2, 1, 3, 1, 3)
    assert d["h"] == "2 + z^2"
    assert d["e_list"] == [3, 2]
    assert d["red"] == 2
    assert d["a"] == [1, 2]
    assert d["b"] == "z"
    assert d["r"] == "1"
    assert d["h_tilde"] == "1 + 2*z"
    assert d["depth"] == 0 and not d["cm"]
    assert d["series_constraint"] == [2, 1, 1]
    assert d["verdict"]["matches"] is True
    assert len(log.forms) == 1


def test_single_entry_presentation():
    report, _ = analyze(pres([["x"]], ("x",)))
    assert (report.mu, report.e, report.depth, report.cm) == (1, 1, 0, True)
    assert str(report.h) == "1"


def test_cohen_macaulay_diagonal():
    report, _ = analyze(pres([["y^2", "0"], ["0", "y^2"]]))
    assert report.cm
    assert report.series_constraint == (2, 2, 0)
    assert report.r_poly == []


def test_three_variable_example_checks_all_identities():
    rows = [["x", "y", "0"], ["x^2", "x^2", "0"], ["0", "0", "x^2"]]
    report, log = analyze(pres(rows, ("x", "y", "z")))
    assert report.depth == 1
    assert report.checks["alternating_length"] is True
    assert report.checks["rho1_sequence"] is True
    assert len(log.certificates) == 2


def test_reports_do_not_depend_on_seed():
    P = pres([["x", "y", "z"], ["x^2", "x^2", "0"], ["0", "0", "x^2"]], ("x", "y", "z"))
    dicts = [analyze(P, seed=s)[0].to_dict() for s in (0, 1, 2)]
    assert dicts[0] == dicts[1] == dicts[2]


def test_larger_window_gives_same_report():
    P = pres([["y^2", "0", "0"], ["x", "y", "0"], ["0", "0", "y"]])
    assert analyze(P, D=12)[0].to_dict() == analyze(P, D=14)[0].to_dict()


def test_annihilator_order_recorded():
    text = "vars = x, y\nmatrix = [[y^2, 0, 0], [x, y, 0], [0, 0, y]]\nannihilator = y^3\n"
    inp = parse_input(text)
    report, _ = analyze(inp.presentation, annihilator=inp.annihilator)
    assert report.annihilator_order == 3


def test_bad_annihilator_is_an_error():
    from gradmod.errors import IdentityViolation

    inp = parse_input("vars = x, y\nmatrix = [[y^2, 0], [x, y]]\nannihilator = y^2\n")
    with pytest.raises(IdentityViolation):
        analyze(inp.presentation, annihilator=inp.annihilator)


def test_regular_sequence():
    P = pres([["x", "y", "0"], ["x^2", "x^2", "0"], ["0", "0", "x^2"]], ("x", "y", "z"))
    assert regular_sequence(P, ["z"])
    assert not regular_sequence(P, ["y"])
    Q = pres([["x", "y", "0", "0"], ["x^2", "x^2", "0", "0"], ["0", "0", "x^2", "0"],
              ["0", "0", "0", "x^2"]], ("x", "y", "z", "t"))
    assert regular_sequence(Q, ["z", "t"])
