import pytest

from src.core.errors import NotDualizable, UnknownFamily
from src.core.linalg import add, first_difference, identity, matmul, matrix_from_entries, sub, zero
from src.quantum.rmatrix import (
    RMatrix, derive_rprime, dual_braiding_check, dual_braidings, identity_r, info, inverse, is_triangular,
    permutation_r, pr_minimal_polynomial, qybe_check, second_inverse, standard_r, triple_difference,
)


@pytest.mark.parametrize('n', [2, 3])
def test_glq_passes_qybe(qfield, n):
    report = qybe_check(standard_r('glq', n, qfield))
    assert report.passed
    assert [check.name for check in report.checks] == ['qybe']


def test_single_entry_mutation_fails_with_witness(glq2, qfield):
    entries = dict(glq2.entries)
    entries[(1, 1, 0, 1)] = qfield.q ** 3
    report = qybe_check(RMatrix(2, qfield, entries))
    check = report.check('qybe')
    assert not check.passed
    assert check.witness == '(0,0,1,1,0,1)'
    assert check.residual != '0'


def test_triple_difference_orders_by_index_tuple(qfield):
    # (1, 4) comes first by row but decodes to (0,1,0,0,1,0); (2, 0) decodes to (0,0,1,0,0,0).
    left = matrix_from_entries(qfield, 8, 8, {(1, 4): qfield.one, (2, 0): qfield.q})
    at, residual = triple_difference(2, left, zero(qfield, 8, 8))
    assert at == '(0,0,1,0,0,0)'
    assert residual == qfield.q
    assert triple_difference(2, left, left) is None


def test_glq_entries(glq2, qfield):
    assert glq2.get(0, 0, 0, 0) == qfield.q
    assert glq2.get(0, 0, 1, 1) == qfield.one
    assert qfield.format(glq2.get(0, 1, 1, 0)) == 'q - q^-1'
    assert glq2.get(1, 0, 0, 1) == qfield.zero
    assert glq2.to_dict()['entries']['0,1,1,0'] == 'q - q^-1'


def test_unknown_family(qfield):
    with pytest.raises(UnknownFamily):
        standard_r('sl3', 2, qfield)


def test_out_of_range_index(qfield):
    with pytest.raises(ValueError):
        RMatrix(2, qfield, {(0, 0, 0, 2): qfield.one})


@pytest.mark.parametrize('n', [2, 3])
def test_glq_is_dualizable(qfield, n):
    r = standard_r('glq', n, qfield)
    r_tilde = second_inverse(r)
    size = n * n
    product = matmul(r_tilde.t2().matrix(), r.t2().matrix())
    assert first_difference(product, identity(qfield, size)) is None
    report = dual_braiding_check(r)
    assert report.passed, report.to_dict()
    assert {check.name for check in report.checks} >= {'ev_natural_vector', 'coev_natural_covector'}


def test_permutation_has_no_second_inverse(qfield):
    # P^t2 sends every e_j (x) e_j onto the same row
    with pytest.raises(NotDualizable):
        second_inverse(permutation_r(qfield, 2))


def test_dual_braidings_of_identity_are_flips(qfield):
    psi = dual_braidings(identity_r(qfield, 2))
    assert psi.psi_vv.apply(0, 1) == {(1, 0): qfield.one}
    assert psi.psi_co_vec.apply(1, 0) == {(0, 1): qfield.one}


def test_triangular(qfield, glq2):
    assert is_triangular(identity_r(qfield, 2))
    assert not is_triangular(glq2)


def test_inverse_round_trip(glq2, qfield):
    product = matmul(glq2.matrix(), inverse(glq2).matrix())
    assert first_difference(product, identity(qfield, 4)) is None


def test_pr_roots_of_glq(glq2, qfield):
    roots = [(qfield.format(root), m) for root, m in pr_minimal_polynomial(glq2)]
    assert roots == [('-q^-1', 1), ('q', 1)]


def test_rprime_is_the_complementary_projector(glq2, qfield):
    rescaled, r_prime = derive_rprime(glq2)
    # (PR + 1)(PR' - 1) = 0
    one = identity(qfield, 4)
    left = add(rescaled.pr_matrix(), one)
    right = sub(r_prime.pr_matrix(), one)
    assert first_difference(matmul(left, right), zero(qfield, 4, 4)) is None
    assert rescaled.get(0, 0, 0, 0) == qfield.q * qfield.q


def test_rprime_rejects_bad_index(glq2):
    with pytest.raises(ValueError):
        derive_rprime(glq2, eigen_index=5)


def test_info(glq2):
    summary = info(glq2)
    assert summary['n'] == 2
    assert summary['qybe'] is True
    assert summary['invertible'] is True
    assert summary['triangular'] is False
    assert summary['dualizable'] is True
    assert summary['v_invertible'] is True
    assert summary['pr_roots'] == [{'root': '-q^-1', 'multiplicity': 1}, {'root': 'q', 'multiplicity': 1}]
