import pytest

from src.core.errors import ModeMismatch, NotABialgebraMap
from src.core.scalar import Field
from src.hopf.findim import (
    drinfeld_double, dual_functional, dual_hopf, group_algebra, group_function_hopf, hopf_verify, zn_prime,
)
from src.hopf.modules import adjoint_module
from src.hopf.transmute import (
    anyonic_version, braided_commutativity_report, braided_hopf_check, braided_module_algebra_check,
    cocom_check, cotransmute, duality_check, identity_map, tables_agree, theta_iso_check, transmute,
    universal_r_report,
)


def _self_transmute(H, qt):
    return transmute(H, qt, H, identity_map(H), qt)


@pytest.fixture(scope='module')
def z2prime(cyc2):
    return zn_prime(cyc2, 2)


@pytest.fixture(scope='module')
def double_z2(qfield):
    return drinfeld_double(group_algebra(qfield, [2]))


def test_commutative_cocommutative_input_keeps_its_tables(z2prime):
    H, qt = z2prime
    B = _self_transmute(H, qt)
    assert B.report.passed, B.report.to_dict()
    assert B.coproduct == H.coproduct
    assert tables_agree(B, H).passed


@pytest.mark.parametrize('n', [2, 3])
def test_cocommutativity_identity_for_zn_prime(n):
    H, qt = zn_prime(Field(f"cyclotomic:{n}"), n)
    B = _self_transmute(H, qt)
    report = cocom_check(B)
    assert report.passed, report.to_dict()
    assert report.check('universal_r_trivial').passed


def test_cocommutativity_identity_for_double(double_z2):
    D, qt = double_z2
    B = _self_transmute(D, qt)
    assert B.report.passed, B.report.to_dict()
    assert cocom_check(B).passed
    assert universal_r_report(B).passed


def test_braided_quasitriangular_axioms(z2prime):
    H, qt = z2prime
    B = _self_transmute(H, qt)
    report = universal_r_report(B)
    assert [check.name for check in report.checks] == [
        'universal_r_counit', 'universal_r_coproduct_left', 'universal_r_coproduct_right',
        'universal_r_intertwining',
    ]
    assert report.passed


def test_without_structure_on_h_the_element_is_absent(z2prime):
    H, qt = z2prime
    B = transmute(H, qt, H, identity_map(H))
    assert B.universal_r is None
    assert not universal_r_report(B).passed
    assert 'universal_r' not in B.to_dict()


@pytest.mark.parametrize('n', [2, 3])
def test_anyonic_closed_form_matches_transmutation(n):
    H, qt = zn_prime(Field(f"cyclotomic:{n}"), n)
    generic = _self_transmute(H, qt)
    closed = anyonic_version(H, H.basis(H.index('g')), n)
    assert closed.report.passed
    assert tables_agree(generic, closed).passed


def test_anyonic_version_needs_matching_field(qfield):
    H = group_algebra(qfield, [2])
    with pytest.raises(ModeMismatch):
        anyonic_version(H, H.basis(1), 2)


def test_non_bialgebra_map_is_rejected(z2prime):
    H, qt = z2prime
    broken = {0: H.basis(0), 1: {}}
    with pytest.raises(NotABialgebraMap):
        transmute(H, qt, H, broken)


def test_theta_is_an_algebra_isomorphism(z2prime):
    H, qt = z2prime
    report = theta_iso_check(H, qt, H, adjoint_module(H))
    assert report.passed, report.to_dict()
    assert report.check('bijective').passed


def test_transmutation_keeps_module_algebras(z2prime):
    H, qt = z2prime
    B = _self_transmute(H, qt)
    assert braided_module_algebra_check(B, H, adjoint_module(H)).passed


def test_cotransmutation_of_a_bicharacter(qfield):
    beta = [[qfield.one, qfield.one], [qfield.one, -qfield.one]]
    gf = group_function_hopf(qfield, [2], beta)
    B = cotransmute(gf.group, gf.functional)
    assert B.report.passed, B.report.to_dict()
    assert B.coproduct == gf.group.coproduct
    assert braided_commutativity_report(gf.group, B, gf.functional).passed


def test_transmutation_and_cotransmutation_are_dual(z2prime):
    H, qt = z2prime
    A = dual_hopf(H)
    assert hopf_verify(A).passed
    BA = cotransmute(A, dual_functional(qt))
    report = duality_check(_self_transmute(H, qt), BA, H)
    assert report.passed, report.to_dict()


def test_braided_hopf_check_uses_the_braided_square(z2prime):
    H, qt = z2prime
    B = _self_transmute(H, qt)
    assert braided_hopf_check(B).passed
