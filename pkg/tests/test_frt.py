import pytest

from src.algebra.ncpoly import NCPoly, parse_ncpoly
from src.algebra.quotient import completion_check
from src.quantum.frt import (
    DQTPairing, dqt_inverse_pair, dqt_pair, dqt_verify, frt_algebra, monomials, pair_poly, rep_check,
)
from src.quantum.rmatrix import inverse


@pytest.fixture(scope='module')
def mq2(glq2):
    return frt_algebra(glq2, 4)


def test_quantum_matrices_are_pbw(mq2):
    algebra = mq2.algebra
    assert str(algebra.status) == 'complete'
    assert len(algebra.rules) == 6
    assert all(len(lead) == 2 for lead in algebra.rules)
    assert [len(algebra.normal_words(d)) for d in range(4)] == [1, 4, 10, 20]
    assert completion_check(algebra, 4).passed


def test_quantum_matrix_relations(mq2, qfield):
    alphabet = mq2.alphabet
    ba = parse_ncpoly('t[0,1]*t[0,0]', alphabet, qfield)
    assert set(mq2.algebra.normal_form(ba).terms) == {(0, 1)}
    bc = parse_ncpoly('t[0,1]*t[1,0] - t[1,0]*t[0,1]', alphabet, qfield)
    assert not mq2.algebra.normal_form(bc)


def test_fundamental_representations_respect_relations(mq2):
    assert rep_check(mq2).passed


def test_pairing_on_generators(glq2, qfield):
    pairing = DQTPairing(glq2)
    r_inv = inverse(glq2)
    for i, j, k, l in [(0, 0, 0, 0), (0, 1, 1, 0), (1, 0, 0, 1), (1, 1, 0, 0)]:
        assert qfield.eq(dqt_pair(pairing, (i * 2 + j,), (k * 2 + l,)), glq2.get(i, j, k, l))
        assert qfield.eq(dqt_inverse_pair(pairing, (i * 2 + j,), (k * 2 + l,)), r_inv.get(i, j, k, l))


def test_pairing_with_unit_is_counit(glq2, qfield):
    pairing = DQTPairing(glq2)
    assert dqt_pair(pairing, (), (0, 3)) == qfield.one
    assert dqt_pair(pairing, (1,), ()) == qfield.zero


def test_grid_and_recursive_agree_with_all_identities(mq2):
    report = dqt_verify(mq2, 2)
    assert report.passed, report.to_dict()
    assert [check.name for check in report.checks] == [
        'grid_recursive_agree', 'convolution_inverse_left', 'convolution_inverse_right',
        'almost_commutative', 'relations_pair_to_zero',
    ]


def test_rescaling_law(glq2, qfield):
    # R -> lambda R scales the pairing of degrees (m, k) by lambda^(m k)
    base = DQTPairing(glq2)
    scaled = DQTPairing(glq2.scale(qfield.q))
    factor = qfield.q ** 2
    for a in monomials(2, 2, minimum=2):
        for b in monomials(2, 1, minimum=1):
            assert qfield.eq(scaled.pair(a, b), factor * base.pair(a, b))


def test_relations_pair_to_zero(mq2, glq2, qfield):
    pairing = DQTPairing(glq2, 'recursive')
    rel = mq2.algebra.relations[0]
    for w in monomials(2, 1, minimum=1):
        assert not pair_poly(pairing, rel, NCPoly.monomial(qfield, w))
        assert not pair_poly(pairing, NCPoly.monomial(qfield, w), rel)


def test_unknown_pairing_mode(glq2):
    with pytest.raises(ValueError):
        DQTPairing(glq2, 'lattice')
