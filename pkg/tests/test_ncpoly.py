import pytest
from hypothesis import given, strategies as st

from src.algebra.ncpoly import Alphabet, NCPoly, deglex_key, parse_ncpoly, parse_word
from src.core.errors import SchemaError, ScalarSyntaxError
from src.core.scalar import Field


XY = Alphabet(['x', 'y'])


def test_format_descending_deglex(qfield):
    poly = parse_ncpoly('y*x - q*x*y', XY, qfield)
    assert poly.coeff((1, 0)) == qfield.one
    assert qfield.eq(poly.coeff((0, 1)), -qfield.q)
    assert poly.format(XY) == 'y*x - q*x*y'


def test_non_monomial_coefficients_are_bracketed(qfield):
    poly = parse_ncpoly('(q + 1)*x + 3', XY, qfield)
    assert poly.format(XY) == '(q + 1)*x + 3'


def test_indexed_generators(qfield):
    alphabet = Alphabet(['t[0,0]', 't[0,1]', 't[1,0]', 't[1,1]'])
    poly = parse_ncpoly('t[0,1]*t[0,0] - t[1,1]', alphabet, qfield)
    assert set(poly.terms) == {(1, 0), (3,)}
    assert alphabet.lookup('t', (1, 0)) == 2


def test_powers_expand(qfield):
    assert parse_ncpoly('x^3', XY, qfield) == NCPoly.monomial(qfield, (0, 0, 0))
    assert parse_ncpoly('q^-1*x', XY, qfield).coeff((0,)) == qfield.inv(qfield.q)


@pytest.mark.parametrize('text', ['x/y', 'x^-1', 'z*x', 'x0'])
def test_bad_literals(qfield, text):
    with pytest.raises(ScalarSyntaxError):
        parse_ncpoly(text, XY, qfield)


def test_parse_word(qfield):
    assert parse_word('x*y*x', XY, qfield) == (0, 1, 0)
    with pytest.raises(ScalarSyntaxError):
        parse_word('2*x', XY, qfield)
    with pytest.raises(ScalarSyntaxError):
        parse_word('x + y', XY, qfield)


def test_duplicate_generator():
    with pytest.raises(SchemaError):
        Alphabet(['x', 'x'])


def test_substitute(qfield):
    poly = parse_ncpoly('x*y', XY, qfield)
    images = {0: parse_ncpoly('x + y', XY, qfield), 1: parse_ncpoly('q*x', XY, qfield)}
    assert poly.substitute(images) == parse_ncpoly('q*x*x + q*y*x', XY, qfield)


def test_deglex_key_orders_by_length_first():
    assert deglex_key((1,)) < deglex_key((0, 0))
    assert deglex_key((0, 1)) < deglex_key((1, 0))


words = st.lists(st.integers(min_value=0, max_value=1), max_size=3).map(tuple)
polys = st.dictionaries(words, st.integers(min_value=-3, max_value=3), max_size=4)


@given(polys, polys, polys)
def test_product_is_associative_and_distributive(a, b, c):
    field = Field('qfield')
    pa, pb, pc = (NCPoly(field, {w: field.from_int(v) for w, v in p.items()}) for p in (a, b, c))
    assert (pa * pb) * pc == pa * (pb * pc)
    assert pa * (pb + pc) == pa * pb + pa * pc
