import pytest

from src.algebra.braided import bialgebra_axiom_check, psi_descends
from src.algebra.ncpoly import NCPoly
from src.core.errors import DegreeUnsupported, InvalidBraiding
from src.core.linalg import first_difference, identity
from src.quantum.bmatrix import (
    braided_matrix_algebra, canonical_rep_check, chi_relations, transmute_check, transmute_monomial,
    triangular_check,
)
from src.quantum.frt import frt_algebra
from src.quantum.rmatrix import RMatrix, identity_r


@pytest.fixture(scope='module')
def bmq2(glq2):
    return braided_matrix_algebra(glq2, 4)


@pytest.fixture(scope='module')
def mq2(glq2):
    return frt_algebra(glq2, 4, verify=False)


def test_braided_matrices_are_pbw(bmq2):
    algebra = bmq2.algebra
    assert str(algebra.status) == 'complete'
    assert all(len(lead) == 2 for lead in algebra.rules)
    assert [len(algebra.normal_words(d)) for d in range(4)] == [1, 4, 10, 20]
    assert bmq2.psi_invertible


def test_coproduct_is_a_braided_algebra_map(bmq2):
    report = bialgebra_axiom_check(bmq2.bialgebra, 2)
    assert report.passed, report.to_dict()


def test_braiding_descends(bmq2):
    assert psi_descends(bmq2.algebra, bmq2.psi, 3).passed


def test_canonical_representation_kills_relations(bmq2):
    assert canonical_rep_check(bmq2).passed


def test_triangular_r_gives_trivial_q(qfield):
    bm = braided_matrix_algebra(identity_r(qfield, 2), 3)
    assert first_difference(bm.q.matrix(), identity(qfield, 4)) is None
    assert triangular_check(bm).passed
    # u1 u2 = u2 u1: only the commuting rules remain
    assert all(len(rule) == 1 for rule in bm.algebra.rules.values())


def test_relations_transmute_to_zero(bmq2, mq2):
    report = transmute_check(bmq2, mq2, 2)
    assert report.passed, report.to_dict()


def test_degree_three_transmutation(bmq2, mq2):
    report = transmute_check(bmq2, mq2, 3)
    assert report.check('relation_products_transmute_to_zero').passed


def test_generators_transmute_to_themselves(bmq2, mq2, qfield):
    image = transmute_monomial(bmq2, mq2, (1,))
    assert image == NCPoly.gen(qfield, 1)


def test_transmutation_degree_limit(bmq2, mq2):
    with pytest.raises(DegreeUnsupported):
        transmute_monomial(bmq2, mq2, (0, 0, 0, 0))


def test_chi_form(bmq2):
    chi = chi_relations(bmq2)
    assert chi.report.passed, chi.report.to_dict()
    assert chi.alphabet.names[0] == 'chi[0,0]'


def test_non_solution_is_rejected(glq2, qfield):
    entries = dict(glq2.entries)
    entries[(0, 0, 0, 0)] = qfield.one
    with pytest.raises(InvalidBraiding):
        braided_matrix_algebra(RMatrix(2, qfield, entries), 3)
