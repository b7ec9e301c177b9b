import pytest

from src.algebra.braided import bialgebra_axiom_check
from src.algebra.ncpoly import NCPoly, parse_ncpoly
from src.core.errors import RPrimeConditionFailed
from src.core.scalar import Field
from src.quantum.planes import (
    Derivatives, braided_integer, covector_algebra, leibniz_check, partial, plane_algebra, plane_conditions,
    resolve_rprime, symmetric_pair, vector_algebra,
)
from src.quantum.rmatrix import RMatrix, identity_r


@pytest.fixture(scope='module')
def quantum_plane(glq2):
    r, r_prime = resolve_rprime(glq2, 'hecke')
    return covector_algebra(r, r_prime, 5)


@pytest.fixture(scope='module')
def braided_line():
    field = Field('qfield')
    r = RMatrix(1, field, {(0, 0, 0, 0): field.q})
    r, r_prime = resolve_rprime(r, 'free')
    return covector_algebra(r, r_prime, 7)


def test_quantum_plane_relation(quantum_plane):
    assert quantum_plane.algebra.rule_text() == ['x[1]*x[0] -> q*x[0]*x[1]']
    assert str(quantum_plane.algebra.status) == 'complete'
    assert [len(quantum_plane.algebra.normal_words(d)) for d in range(7)] == [1, 2, 3, 4, 5, 6, 7]


def test_hecke_pair_conditions(glq2):
    r, r_prime = resolve_rprime(glq2, 'hecke')
    report = plane_conditions(r, r_prime)
    assert report.passed
    assert [check.name for check in report.checks] == ['left_mixed_ybe', 'right_mixed_ybe', 'hecke_pair']


def test_mismatched_rprime_is_rejected(glq2, qfield):
    with pytest.raises(RPrimeConditionFailed):
        plane_algebra('covector', glq2, identity_r(qfield, 2), 3)


def test_additive_coproduct_and_antipode(quantum_plane):
    assert quantum_plane.is_hopf
    assert symmetric_pair(quantum_plane.r, quantum_plane.r_prime)
    report = bialgebra_axiom_check(quantum_plane.bialgebra, 3)
    assert report.passed, report.to_dict()


def test_vector_plane(glq2):
    r, r_prime = resolve_rprime(glq2, 'hecke')
    plane = vector_algebra(r, r_prime, 4)
    assert len(plane.algebra.rules) == 1
    assert plane.alphabet.names == ['v[0]', 'v[1]']
    assert [len(plane.algebra.normal_words(d)) for d in range(4)] == [1, 2, 3, 4]


@pytest.mark.parametrize('m', range(1, 7))
def test_jackson_derivative_on_braided_line(braided_line, m):
    field = braided_line.r.field
    expected = field.zero
    for k in range(m):
        expected += field.q_power(k)
    derivative = partial(braided_line, 0, NCPoly.monomial(field, (0,) * m))
    assert derivative == NCPoly.monomial(field, (0,) * (m - 1), expected)


def test_braided_line_leibniz_route_agrees(braided_line):
    field = braided_line.r.field
    poly = NCPoly.monomial(field, (0, 0, 0, 0))
    assert partial(braided_line, 0, poly, route='leibniz') == partial(braided_line, 0, poly)


def test_partial_on_quantum_plane(quantum_plane, qfield):
    alpha = quantum_plane.alphabet
    assert partial(quantum_plane, 0, parse_ncpoly('x[0]', alpha, qfield)) == NCPoly.one(qfield)
    assert not partial(quantum_plane, 0, parse_ncpoly('x[1]', alpha, qfield))
    poly = parse_ncpoly('x[0]*x[1]*x[0] + x[1]*x[1]', alpha, qfield)
    for i in range(2):
        assert partial(quantum_plane, i, poly, route='leibniz') == partial(quantum_plane, i, poly)


def test_partial_rejects_bad_arguments(quantum_plane, qfield):
    with pytest.raises(ValueError):
        partial(quantum_plane, 2, NCPoly.one(qfield))
    with pytest.raises(ValueError):
        partial(quantum_plane, 0, NCPoly.one(qfield), route='sideways')


def test_leibniz_suite_to_degree_four(quantum_plane):
    report = leibniz_check(quantum_plane, 4)
    assert report.passed, report.to_dict()
    assert [check.name for check in report.checks] == ['partial_kills_relations', 'leibniz', 'operator_relations']


def test_truncated_integer_breaks_the_calculus(quantum_plane):
    broken = Derivatives(quantum_plane, lambda r, m: braided_integer(r, m, drop_last=True))
    assert not leibniz_check(quantum_plane, 3, derivatives=broken).passed


def test_braided_integer_on_the_line(braided_line):
    field = braided_line.r.field
    value = braided_integer(braided_line.r, 3).matrix.to_dok()[(0, 0)]
    assert field.format(value) == 'q^2 + q + 1'
