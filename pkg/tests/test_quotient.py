import pytest

from src.algebra.ncpoly import Alphabet, NCPoly, parse_ncpoly
from src.algebra.quotient import QuotientAlgebra, completion_check
from src.core.errors import DegreeBoundExceeded, InconsistentRelations


XY = Alphabet(['x', 'y'])


@pytest.fixture
def plane(qfield):
    return QuotientAlgebra(XY, qfield, [parse_ncpoly('y*x - q*x*y', XY, qfield)], degree_bound=4)


def test_quantum_plane_rule(plane):
    assert plane.rule_text() == ['y*x -> q*x*y']
    assert str(plane.status) == 'complete'
    assert completion_check(plane, 4).passed


def test_quantum_plane_normal_words(plane):
    for d in range(7):
        words = plane.normal_words(d)
        assert len(words) == d + 1
        assert all(plane.is_normal(w) for w in words)


def test_normal_form(plane, qfield):
    poly = parse_ncpoly('y*y*x + x*y*x', XY, qfield)
    assert plane.normal_form(poly).format(XY) == 'q^2*x*y*y + q*x*x*y'


def test_normal_form_is_idempotent(plane, qfield):
    poly = parse_ncpoly('y*x*y*x - 2*x*y', XY, qfield)
    once = plane.normal_form(poly)
    assert plane.normal_form(once) == once


def test_inconsistent_relations(qfield):
    relations = [parse_ncpoly('x - 1', XY, qfield), parse_ncpoly('x - 2', XY, qfield)]
    with pytest.raises(InconsistentRelations):
        QuotientAlgebra(XY, qfield, relations, degree_bound=3)


def test_bounded_completion_refuses_long_words(qfield):
    algebra = QuotientAlgebra(XY, qfield, [parse_ncpoly('x*x*x - y', XY, qfield)], degree_bound=3)
    assert str(algebra.status) == 'bounded(3)'
    assert algebra.normal_form(NCPoly.monomial(qfield, (0, 0, 0))) == NCPoly.gen(qfield, 1)
    with pytest.raises(DegreeBoundExceeded):
        algebra.normal_form(NCPoly.monomial(qfield, (0, 0, 0, 0)))


def test_completion_adds_overlap_rules(qfield):
    # x*y -> y and y*x -> x overlap on x*y*x: (xy)x = yx = x and x(yx) = xx.
    relations = [parse_ncpoly('x*y - y', XY, qfield), parse_ncpoly('y*x - x', XY, qfield)]
    algebra = QuotientAlgebra(XY, qfield, relations, degree_bound=4)
    reduced = algebra.normal_form(parse_ncpoly('x*x - x', XY, qfield))
    assert not reduced
    assert completion_check(algebra, 4).passed
