import pytest

from src.algebra.braided import (
    BraidOp, BraidedBialgebra, TensorPower, bialgebra_axiom_check, braided_adjoint, braided_tensor_algebra,
    braided_tensor_power, psi_descends, psi_extend, trivial_braiding,
)
from src.algebra.ncpoly import Alphabet, NCPoly, parse_ncpoly
from src.algebra.quotient import QuotientAlgebra
from src.core.errors import DegreeBoundExceeded, InvalidBraiding


X = Alphabet(['x'])
XY = Alphabet(['x', 'y'])


def _line(field):
    """k<x> with x primitive, braided by Psi(x⊗x) = q x⊗x."""
    algebra = QuotientAlgebra(X, field, [], degree_bound=4)
    psi = trivial_braiding(field, X, X, coeff=field.q)
    coproduct = {0: {((0,), ()): field.one, ((), (0,)): field.one}}
    return BraidedBialgebra(algebra, psi, coproduct, {}, {0: -NCPoly.gen(field, 0)})


def test_singular_table_is_rejected(qfield):
    with pytest.raises(InvalidBraiding):
        BraidOp(qfield, X, X, {(0, 0): {}})


def test_crossing_orders_agree(qfield):
    psi = trivial_braiding(qfield, XY, XY, coeff=qfield.q)
    inner = psi_extend(psi, (0, 1), (1, 1, 0), order='inner')
    outer = psi_extend(psi, (0, 1), (1, 1, 0), order='outer')
    assert inner == outer
    assert inner == {((1, 1, 0), (0, 1)): qfield.q ** 6}
    with pytest.raises(ValueError):
        psi_extend(psi, (0,), (0,), order='sideways')


def test_braided_tensor_algebra_cross_relation(qfield):
    algebra = QuotientAlgebra(X, qfield, [], degree_bound=3)
    psi = trivial_braiding(qfield, X, X, coeff=qfield.q)
    both = braided_tensor_algebra(algebra, algebra, psi)
    assert both.alphabet.names == ['x', "x'"]
    assert both.rule_text() == ["x'*x -> q*x*x'"]
    assert len(both.normal_words(2)) == 3
    assert both.split((0, 1)) == ((0,), (0,))


def test_braided_tensor_cube_has_ordered_normal_words(qfield):
    algebra = QuotientAlgebra(X, qfield, [], degree_bound=3)
    psi = trivial_braiding(qfield, X, X, coeff=qfield.q)
    cube = braided_tensor_power(algebra, psi, 3)
    assert len(cube.alphabet) == 3
    # x^a x'^b x''^c with a + b + c = 2
    assert len(cube.normal_words(2)) == 6


def test_braided_tensor_algebra_is_associative(qfield):
    plane = QuotientAlgebra(XY, qfield, [parse_ncpoly('y*x - q*x*y', XY, qfield)], degree_bound=3)
    psi = trivial_braiding(qfield, XY, XY, coeff=qfield.q)

    bc = braided_tensor_algebra(plane, plane, psi)
    left = braided_tensor_algebra(bc, plane, trivial_braiding(qfield, XY, bc.alphabet, coeff=qfield.q), suffix="''")
    cd = braided_tensor_algebra(plane, plane, psi)
    right = braided_tensor_algebra(plane, cd, trivial_braiding(qfield, cd.alphabet, XY, coeff=qfield.q))

    assert left.alphabet.names == right.alphabet.names == ['x', 'y', "x'", "y'", "x''", "y''"]
    assert left.blocks == right.blocks == [(0, 2), (2, 4), (4, 6)]
    assert left.rule_text() == right.rule_text()
    # three plane relations and twelve cross relations, all quadratic
    assert len(left.rules) == 15
    assert all(len(lead) == 2 for lead in left.rules)
    assert [len(left.normal_words(d)) for d in range(3)] == [1, 6, 21]


def test_tensor_square_product(qfield):
    square = TensorPower(QuotientAlgebra(X, qfield, [], degree_bound=3), trivial_braiding(qfield, X, X, qfield.q), 2)
    left = {((), (0,)): qfield.one}
    right = {((0,), ()): qfield.one}
    assert square.mul(left, right) == {((0,), (0,)): qfield.q}
    assert square.mul(right, left) == {((0,), (0,)): qfield.one}


def test_braided_line_is_a_braided_hopf_algebra(qfield):
    report = bialgebra_axiom_check(_line(qfield), 4)
    assert report.passed, report.to_dict()


def test_braided_line_coproduct_has_q_binomials(qfield):
    bb = _line(qfield)
    delta = bb.delta_word((0, 0))
    assert delta[((0,), (0,))] == qfield.one + qfield.q
    assert delta[((0, 0), ())] == qfield.one


def test_braided_line_antipode(qfield):
    bb = _line(qfield)
    assert bb.antipode_word((0, 0)) == NCPoly.monomial(qfield, (0, 0), qfield.q)


def test_wrong_antipode_is_reported(qfield):
    bb = _line(qfield)
    bb.antipode = {0: NCPoly.gen(qfield, 0)}
    report = bialgebra_axiom_check(bb, 2)
    assert not report.check('antipode_left').passed
    assert report.check('antipode_left').witness == 'x'


def test_braided_adjoint_of_generator_on_itself(qfield):
    bb = _line(qfield)
    x = NCPoly.gen(qfield, 0)
    # Ad_x(x) = x x - q x x
    assert braided_adjoint(bb, x, x) == NCPoly.monomial(qfield, (0, 0), qfield.one - qfield.q)
    assert braided_adjoint(bb, x, x, degree=2) == NCPoly.monomial(qfield, (0, 0), qfield.one - qfield.q)
    with pytest.raises(DegreeBoundExceeded):
        braided_adjoint(bb, x, x, degree=1)


def test_braiding_descends_to_quantum_plane(qfield):
    plane = QuotientAlgebra(XY, qfield, [parse_ncpoly('y*x - q*x*y', XY, qfield)], degree_bound=4)
    assert psi_descends(plane, trivial_braiding(qfield, XY, XY, coeff=qfield.q), 3).passed
