from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sosrank.combinatorics import MultiIndex, enumerate_multiindices
from sosrank.errors import ParseError
from sosrank.formats import (
    form_from_json,
    form_to_json,
    format_form,
    format_ideal,
    format_monomial,
    parse_form,
    parse_ideal,
    parse_terms,
)
from sosrank.hermitian import SignedForm
from sosrank.ideal import MonomialIdeal


@st.composite
def forms(draw):
    n = draw(st.integers(1, 4))
    degree = draw(st.integers(0, 4))
    monos = enumerate_multiindices(n, degree)
    chosen = draw(st.lists(st.sampled_from(monos), min_size=1, max_size=len(monos), unique=True))
    coeffs = {
        a: draw(st.fractions(min_value=-20, max_value=20, max_denominator=9).filter(lambda v: v != 0))
        for a in chosen
    }
    return SignedForm(n, degree, coeffs)


@given(forms(), st.booleans())
def test_text_round_trip(f, one_per_line):
    assert parse_form(format_form(f, one_per_line), f.n) == f


@given(forms())
def test_json_round_trip(f):
    assert form_from_json(form_to_json(f)) == f


def test_inline_and_multiline():
    n, terms = parse_terms("x1^2 - x1 x2 + x2^2")
    assert n == 2
    assert terms == {MultiIndex((2, 0)): 1, MultiIndex((1, 1)): -1, MultiIndex((0, 2)): 1}
    f = parse_form("+3/2 x1^2 x2\n-1 x3^3  # comment\n\n", 3)
    assert f.coefficients == {MultiIndex((2, 1, 0)): Fraction(3, 2), MultiIndex((0, 0, 3)): -1}
    assert parse_form("2*x1*x2 + x1*x2", 2).coefficients == {MultiIndex((1, 1)): 3}
    assert format_monomial((0, 0)) == "1"


@pytest.mark.parametrize("text", ["", "   \n# only a comment", "x1 + x2^2", "x1 - x1", "x0", "3/0 x1", "x1 + y2", "+"])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_form(text)


def test_variable_beyond_n():
    with pytest.raises(ParseError):
        parse_form("x1 + x4", 3)


def test_ideal_round_trip():
    I = MonomialIdeal(3, 3, ((2, 1, 0), (1, 0, 2), (0, 2, 1)))
    text = format_ideal(I)
    assert text.splitlines() == ["x1^2 x2", "x1 x3^2", "x2^2 x3"]
    assert parse_ideal(text, 3) == I
    with pytest.raises(ParseError):
        parse_ideal("x1^2\nx2")
    with pytest.raises(ParseError):
        parse_ideal("x1 x2\nx1 x2")
