import pytest

from src.core.errors import InputNotBraidedHopf, ModeMismatch
from src.core.scalar import Field
from src.hopf.bosonize import (
    anyonic_bosonization_check, anyonic_line, bosonize, bosonized_qt, cobosonize, comodule_line,
    module_coalgebra_report, q_binomial, right_comodule_report, super_line,
)
from src.hopf.findim import apply_map, hopf_verify, qt_verify, zn_prime
from src.hopf.modules import graded_module


def test_q_binomial(qfield):
    assert qfield.eq(q_binomial(qfield, 4, 2), qfield.parse('q^4 + q^3 + 2*q^2 + q + 1'))
    assert q_binomial(qfield, 3, 0) == qfield.one
    assert q_binomial(qfield, 3, 4) == qfield.zero


def test_q_binomial_vanishes_at_root_of_unity(cyc3):
    # [3 1]_q = 1 + q + q^2
    assert cyc3.eq(q_binomial(cyc3, 3, 1), cyc3.zero)


def test_super_line_tables(cyc2):
    B = super_line(cyc2)
    assert B.labels == ['1', 'θ']
    assert B.report.passed, B.report.to_dict()
    assert B.delta_of(1) == {(0, 1): cyc2.one, (1, 0): cyc2.one}
    assert B.s_of(1) == {1: -cyc2.one}
    assert B.action.degrees == [0, 1]


def test_anyonic_line_needs_matching_root(qfield, cyc2):
    with pytest.raises(ModeMismatch):
        anyonic_line(qfield, 3)
    with pytest.raises(ModeMismatch):
        anyonic_line(cyc2, 3)


def test_super_line_bosonizes_to_four_dimensions(cyc2):
    H, qt = zn_prime(cyc2, 2)
    B = super_line(cyc2)
    result = bosonize(H, qt, B)
    bos = result.hopf
    assert bos.dim == 4
    assert bos.labels == ['1|1', '1|g', 'θ|1', 'θ|g']
    assert hopf_verify(bos).passed
    assert result.report.passed
    assert any(check.name.startswith('input.') for check in result.report.checks)


def test_projection_splits_inclusion(cyc2):
    H, qt = zn_prime(cyc2, 2)
    result = bosonize(H, qt, super_line(cyc2))
    for h in range(H.dim):
        assert apply_map(result.projection, result.inclusion[h]) == H.basis(h)


def test_super_bosonization_follows_generator_recipe(cyc2):
    H, qt = zn_prime(cyc2, 2)
    B = super_line(cyc2)
    result = bosonize(H, qt, B)
    report = anyonic_bosonization_check(result, B, 2)
    assert report.passed, report.to_dict()
    assert [check.name for check in report.checks] == [
        'g_order', 'g_commutation', 'coproduct_recipe', 'antipode_recipe',
    ]


def test_super_bosonization_is_quasitriangular(cyc2):
    H, qt = zn_prime(cyc2, 2)
    B = super_line(cyc2)
    result = bosonize(H, qt, B)
    assert qt_verify(result.hopf, bosonized_qt(result, B, qt)).passed


def test_anyonic_line_bosonizes(cyc3):
    H, qt = zn_prime(cyc3, 3)
    B = anyonic_line(cyc3, 3)
    assert B.report.passed, B.report.to_dict()
    result = bosonize(H, qt, B)
    assert result.hopf.dim == 9
    assert anyonic_bosonization_check(result, B, 3).passed


def test_module_coalgebra_report(cyc3):
    B = anyonic_line(cyc3, 3)
    report = module_coalgebra_report(B, B.action)
    assert report.passed
    assert {check.name for check in report.checks} == {'module_coalgebra', 'module_counit'}


def test_ungraded_odd_line_is_rejected(cyc2):
    # with θ in degree 0 the braiding is the flip and (θ⊗1 + 1⊗θ)^2 = 2θ⊗θ
    H, qt = zn_prime(cyc2, 2)
    B = super_line(cyc2)
    B.action = graded_module(H, [0, 0], B.labels)
    with pytest.raises(InputNotBraidedHopf):
        bosonize(H, qt, B)


def test_line_without_action_is_rejected(cyc2):
    H, qt = zn_prime(cyc2, 2)
    B = super_line(cyc2)
    B.action = None
    with pytest.raises(InputNotBraidedHopf):
        bosonize(H, qt, B)


def test_comodule_line_is_a_comodule_algebra(cyc2):
    A, functional, B = comodule_line(cyc2, 2)
    assert B.report.passed, B.report.to_dict()
    assert right_comodule_report(A, B, B.right_coaction).passed


@pytest.mark.parametrize('n', [2, 3])
def test_cobosonize_comodule_line(n):
    field = Field(f"cyclotomic:{n}")
    A, functional, B = comodule_line(field, n)
    result = cobosonize(A, functional, B)
    assert result.hopf.dim == n * n
    assert result.hopf.labels[0] == '1|1'
    assert result.report.passed
    for a in range(A.dim):
        assert apply_map(result.projection, result.inclusion[a]) == A.basis(a)


def test_cobosonize_rejects_trivial_coaction(cyc2):
    A, functional, B = comodule_line(cyc2, 2)
    B.right_coaction = {0: {(0, 0): cyc2.one}, 1: {(1, 0): cyc2.one}}
    with pytest.raises(InputNotBraidedHopf):
        cobosonize(A, functional, B)


def test_cobosonize_needs_a_coaction(cyc2):
    A, functional, B = comodule_line(cyc2, 2)
    B.right_coaction = None
    with pytest.raises(InputNotBraidedHopf):
        cobosonize(A, functional, B)
