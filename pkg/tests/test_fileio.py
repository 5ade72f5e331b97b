from fractions import Fraction

import pytest

from treemax.errors import ParameterError
from treemax.fileio import format_finite, format_radial, parse_finite, parse_radial, parse_value
from treemax.geometry import VertexAddress


def test_parse_value_exact():
    assert parse_value("0.1") == Fraction(1, 10)
    assert parse_value(" 3/4 ") == Fraction(3, 4)
    with pytest.raises(ParameterError):
        parse_value("-1")
    with pytest.raises(ParameterError):
        parse_value("abc")


def test_radial_round_trip():
    f = parse_radial("norm,value\n# comment\n0,2\n1,1\n2,0.5\n", 2)
    assert f.exact == (2, 1, Fraction(1, 2))
    text = format_radial(f)
    assert text.splitlines()[0] == "norm,value"
    g = parse_radial(text, 2)
    assert g.exact == f.exact


def test_radial_rejects_gaps_and_repeats():
    with pytest.raises(ParameterError):
        parse_radial("0,1\n2,1\n", 2)
    with pytest.raises(ParameterError):
        parse_radial("0,1\n0,1\n", 2)
    with pytest.raises(ParameterError):
        parse_radial("0,1,2\n", 2)


def test_finite_round_trip():
    f = parse_finite("path,value\n,1\n0/1,2.5\n2,1/3\n", 2)
    assert f.exact == {VertexAddress((), 2): 1, VertexAddress((0, 1), 2): Fraction(5, 2),
                       VertexAddress((2,), 2): Fraction(1, 3)}
    text = format_finite(f)
    assert text.splitlines()[1] == ",1.00000000000000e+00"
    g = parse_finite(text, 2)
    assert set(g.values) == set(f.values)


def test_finite_rejects_bad_paths():
    with pytest.raises(ParameterError):
        parse_finite("0/x,1\n", 2)
    with pytest.raises(ParameterError):
        parse_finite("0/2,1\n", 2)
    with pytest.raises(ParameterError):
        parse_finite("0,1\n0,2\n", 2)
