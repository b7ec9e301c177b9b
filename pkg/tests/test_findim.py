import pytest

from src.core.errors import ModeMismatch, NotABicharacter
from src.core.scalar import Field
from src.hopf.findim import (
    derived_identities_report, dqt_functional_verify, drinfeld_double, dual_hopf, group_algebra,
    group_function_hopf, hopf_verify, qt_verify, solve_antipode, u_element, zn_prime,
)


@pytest.mark.parametrize('n', [2, 3, 4])
def test_zn_prime_is_quasitriangular(n):
    H, qt = zn_prime(Field(f"cyclotomic:{n}"), n)
    assert hopf_verify(H).passed
    report = qt_verify(H, qt)
    assert report.passed, report.to_dict()
    derived = [check.name for check in derived_identities_report(H, qt).checks]
    assert derived == ['counit_legs', 'qybe', 'antipode_inverse', 'u_inverse', 'square_antipode', 'delta_u']


def test_u_is_g_for_z2_prime(cyc2):
    H, qt = zn_prime(cyc2, 2)
    assert u_element(H, qt) == {H.index('g'): cyc2.one}
    assert H.format(u_element(H, qt)) == 'g'


def test_zn_prime_needs_matching_field(qfield, cyc3):
    with pytest.raises(ModeMismatch):
        zn_prime(qfield, 2)
    with pytest.raises(ModeMismatch):
        zn_prime(cyc3, 2)


def test_group_algebra_tables(qfield):
    H = group_algebra(qfield, [3])
    assert H.labels == ['1', 'g', 'g^2']
    assert H.mul(H.basis(1), H.basis(2)) == H.one()
    assert H.s_of(1) == H.basis(2)
    two = group_algebra(qfield, [2, 2])
    assert two.labels == ['1', 'g1', 'g0', 'g0*g1']
    assert hopf_verify(two).passed


def test_broken_antipode_is_witnessed(qfield):
    H = group_algebra(qfield, [2])
    H.product[(1, 1)] = {1: qfield.one}
    report = hopf_verify(H)
    assert report.check('associativity').passed
    check = report.check('antipode_left')
    assert not check.passed
    assert check.witness == '(g)'


def test_solved_antipode_matches_group_inverse(qfield):
    H = group_algebra(qfield, [3])
    assert solve_antipode(H) == H.antipode


def test_dual_of_group_algebra(qfield):
    dual = dual_hopf(group_algebra(qfield, [3]))
    assert dual.labels == ['1*', 'g*', 'g^2*']
    assert hopf_verify(dual).passed


@pytest.mark.parametrize('n', [2, 3])
def test_drinfeld_double(qfield, n):
    D, qt = drinfeld_double(group_algebra(qfield, [n]))
    assert D.dim == n * n
    assert hopf_verify(D).passed
    assert qt_verify(D, qt).passed


def test_bicharacter_structures(qfield):
    beta = [[qfield.one, qfield.one], [qfield.one, -qfield.one]]
    gf = group_function_hopf(qfield, [2], beta)
    assert qt_verify(gf.functions, gf.qt).passed
    report = dqt_functional_verify(gf.group, gf.functional)
    assert report.passed, report.to_dict()


def test_not_a_bicharacter(qfield):
    beta = [[qfield.one, qfield.one], [qfield.one, qfield.from_int(2)]]
    with pytest.raises(NotABicharacter) as info:
        group_function_hopf(qfield, [2], beta)
    assert info.value.triple is not None


def test_fractional_coefficients_are_bracketed_for_both_signs(cyc2):
    H, qt = zn_prime(cyc2, 2)
    assert H.format_tensor(qt.element) == '(1/2)*1⊗1 + (1/2)*1⊗g + (1/2)*g⊗1 - (1/2)*g⊗g'
    assert H.format({0: cyc2.from_rational(-1, 2), 1: cyc2.from_int(-3)}) == '-(1/2)*1 - 3*g'
