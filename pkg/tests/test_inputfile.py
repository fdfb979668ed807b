from __future__ import annotations

import pytest

from gradmod.analysis import analyze
from gradmod.cli import bundled_corpus
from gradmod.inputfile import InputSyntaxError, parse_input, read_input, render

BASIC = """\
# a small example
vars = x, y
matrix = [[y^2, 0],[x, y]]
"""


def test_parse_basic():
    inp = parse_input(BASIC)
    assert inp.r == 2
    assert inp.vars == ["x", "y"]
    assert inp.prime == 32003
    assert inp.comments == ["a small example"]
    assert inp.entries == [["y^2", "0"], ["x", "y"]]


def test_multiline_matrix_and_expected_block():
    text = """\
name = test
prime = 101
vars = x, y, z
matrix = [[x, y, z],
          [x^2, x^2, 0],   # second row
          [0, 0, x^2]]
annihilator = x^2*(x - y)

[expected]
depth = 0
"""
    inp = parse_input(text)
    assert inp.prime == 101
    assert inp.name == "test"
    assert inp.annihilator_text == "x^2*(x - y)"
    assert inp.expected == {"depth": "0"}
    assert inp.presentation.r == 3


def test_unit_entry_rejected():
    with pytest.raises(InputSyntaxError, match="presentation not minimal") as exc:
        parse_input("vars = x, y\nmatrix = [[1 + x, 0], [0, y]]\n")
    assert exc.value.line == 2
    assert exc.value.column == 12


def test_zero_determinant_rejected():
    with pytest.raises(InputSyntaxError, match="determinant is zero"):
        parse_input("vars = x, y\nmatrix = [[x, y],[x, y]]\n")


def test_syntax_error_position():
    text = "vars = x, y\nmatrix = [[x, y],\n          [y, x +* 2]]\n"
    with pytest.raises(InputSyntaxError) as exc:
        parse_input(text)
    assert exc.value.line == 3


def test_unknown_variable_position():
    with pytest.raises(InputSyntaxError) as exc:
        parse_input("vars = x, y\nmatrix = [[x, w], [y, x]]\n")
    assert exc.value.line == 2
    assert exc.value.column == 15


@pytest.mark.parametrize("text,msg", [
    ("matrix = [[x]]\n", "missing 'vars'"),
    ("vars = x\n", "missing 'matrix'"),
    ("vars = x\nmatrix = [[x, x^2]]\n", "square"),
    ("vars = x\nprime = 12\nmatrix = [[x]]\n", "not prime"),
    ("vars = x\nfoo = 1\nmatrix = [[x]]\n", "unknown key"),
    ("vars = x\nmatrix = [[x]\n", "unbalanced"),
    ("vars = x, x\nmatrix = [[x]]\n", "repeated"),
])
def test_other_errors(text, msg):
    with pytest.raises(InputSyntaxError, match=msg):
        parse_input(text)


def test_render_round_trip():
    text = "vars = x,y\nmatrix = [[ y^2 ,0],\n   [x,   y]]\n\n[expected]\ndepth = 0\n"
    inp = parse_input(text)
    again = parse_input(render(inp))
    assert again.entries == inp.entries
    assert again.expected == inp.expected
    assert render(again) == render(inp)
    assert analyze(again.presentation)[0].to_dict() == analyze(inp.presentation)[0].to_dict()


@pytest.mark.parametrize("path", bundled_corpus(), ids=lambda p: p.stem)
def test_corpus_files_round_trip(path):
    inp = read_input(path)
    assert parse_input(render(inp)).presentation == inp.presentation
