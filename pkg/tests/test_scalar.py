import pytest
from hypothesis import given, strategies as st

from src.core.errors import DivisionByZero, ModeMismatch, ScalarSyntaxError
from src.core.scalar import Field, parse_mode


laurent = st.lists(st.integers(min_value=-5, max_value=5), min_size=1, max_size=5)


def _build(field, coeffs, shift=-2):
    total = field.zero
    for k, c in enumerate(coeffs):
        total += field.from_int(c) * field.q_power(k + shift)
    return total


def test_canonical_laurent_text(qfield):
    assert qfield.format(qfield.parse('q - q^-1')) == 'q - q^-1'
    assert qfield.format(qfield.parse('1 + q + q^2')) == 'q^2 + q + 1'
    assert qfield.format(qfield.parse('-2*q^-3 + 1/2')) == '1/2 - 2*q^-3'


def test_quotient_reduces_when_laurent(qfield):
    assert qfield.format(qfield.parse('(q^2 - 1)/(q - 1)')) == 'q + 1'


def test_quotient_printed_when_not_laurent(qfield):
    value = qfield.parse('1/(q + 1)')
    text = qfield.format(value)
    assert text == '(1)/(q + 1)'
    assert qfield.eq(qfield.parse(text), value)


def test_cyclotomic_reduction(cyc3, cyc2):
    assert cyc3.eq(cyc3.parse('q^3'), cyc3.one)
    assert cyc3.format(cyc3.parse('q^2')) == '-q - 1'
    assert cyc3.format(cyc3.parse('1 + q + q^2')) == '0'
    assert cyc2.format(cyc2.q) == '-1'


def test_mode_tag_must_agree(qfield, cyc3):
    assert cyc3.eq(cyc3.parse('q@cyclotomic:3'), cyc3.q)
    with pytest.raises(ModeMismatch):
        qfield.parse('q@cyclotomic:3')


def test_syntax_errors_carry_position(qfield):
    with pytest.raises(ScalarSyntaxError) as info:
        qfield.parse('q + * 2')
    assert info.value.position == 4
    with pytest.raises(ScalarSyntaxError):
        qfield.parse('')
    with pytest.raises(ScalarSyntaxError):
        qfield.parse('x')


def test_division_by_zero(qfield, cyc3):
    with pytest.raises(DivisionByZero):
        qfield.parse('1/(q - q)')
    with pytest.raises(DivisionByZero):
        cyc3.parse('1/(1 + q + q^2)')


def test_parse_mode():
    assert parse_mode('qfield') == ('qfield', 0)
    assert parse_mode('Cyclotomic:4') == ('cyclotomic', 4)
    with pytest.raises(ModeMismatch):
        parse_mode('cyclotomic:0')
    with pytest.raises(ModeMismatch):
        parse_mode('reals')


def test_coerce_rejects_foreign_elements(qfield, cyc3):
    with pytest.raises(ModeMismatch):
        qfield.arith('add', qfield.one, cyc3.q)
    assert qfield.eq(qfield.arith('add', 2, qfield.one), qfield.from_int(3))


@given(laurent)
def test_format_parses_back(coeffs):
    field = Field('qfield')
    value = _build(field, coeffs)
    assert field.eq(field.parse(field.format(value)), value)


@given(laurent)
def test_cyclotomic_format_parses_back(coeffs):
    field = Field('cyclotomic:5')
    value = _build(field, coeffs)
    assert field.eq(field.parse(field.format(value)), value)


@given(laurent)
def test_nonzero_elements_invert(coeffs):
    field = Field('qfield')
    value = _build(field, coeffs)
    if value:
        assert field.eq(value * field.inv(value), field.one)
    else:
        with pytest.raises(DivisionByZero):
            field.inv(value)
