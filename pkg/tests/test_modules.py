import pytest

from src.core.errors import ModeMismatch
from src.hopf.findim import drinfeld_double, group_algebra, zn_prime
from src.hopf.modules import (
    adjoint_module, anyonic_dim, anyonic_trace, braiding_report, crossed_module_check, graded_module,
    hexagon_report, module_braiding, module_verify, nfold_module_algebra_check, quasitriangular_coaction,
    squared_braiding_identity, tensor_module, trivial_module,
)


@pytest.fixture(scope='module')
def z2prime(cyc2):
    return zn_prime(cyc2, 2)


@pytest.fixture(scope='module')
def z3prime(cyc3):
    return zn_prime(cyc3, 3)


def test_super_flip(z2prime, cyc2):
    H, qt = z2prime
    V = graded_module(H, [0, 1])
    psi = module_braiding(H, qt, V, V)
    assert psi[(0, 0)] == {(0, 0): cyc2.one}
    assert psi[(0, 1)] == {(1, 0): cyc2.one}
    assert psi[(1, 0)] == {(0, 1): cyc2.one}
    assert psi[(1, 1)] == {(1, 1): -cyc2.one}
    assert squared_braiding_identity(H, qt, V, V) is None


def test_anyonic_braiding_is_not_symmetric(z3prime):
    H, qt = z3prime
    V = graded_module(H, [0, 1])
    witness, _ = squared_braiding_identity(H, qt, V, V)
    assert witness == '(v1,v1)'


def test_braiding_is_a_module_map_and_satisfies_hexagons(z3prime):
    H, qt = z3prime
    V = graded_module(H, [0, 1, 2])
    W = graded_module(H, [1, 2], labels=['w0', 'w1'])
    assert braiding_report(H, qt, V, W).passed
    report = hexagon_report(H, qt, V, W, V)
    assert [check.name for check in report.checks] == ['hexagon_left', 'hexagon_right']
    assert report.passed


def test_graded_module_needs_cyclotomic(qfield):
    with pytest.raises(ModeMismatch):
        graded_module(group_algebra(qfield, [2]), [0, 1])


def test_standard_modules(qfield):
    H = group_algebra(qfield, [3])
    assert module_verify(adjoint_module(H)).passed
    trivial = trivial_module(H, ['a', 'b'])
    assert module_verify(trivial).passed
    both = tensor_module(adjoint_module(H), trivial)
    assert both.dim == 6
    assert both.labels[1] == '1⊗b'
    assert module_verify(both).passed


def test_tensor_module_degrees(z3prime):
    H, _ = z3prime
    V = graded_module(H, [1, 2])
    assert tensor_module(V, V).degrees == [2, 0, 0, 1]


def test_anyonic_dimension(cyc2, cyc3):
    # superdimension at n = 2
    assert cyc2.eq(anyonic_dim(cyc2, [2, 1]), cyc2.one)
    assert cyc2.eq(anyonic_dim(cyc2, [1, 1]), cyc2.zero)
    assert cyc3.eq(anyonic_dim(cyc3, [1, 1, 1]), cyc3.parse('1 + 2*q^2'))
    with pytest.raises(ModeMismatch):
        anyonic_dim(cyc3, [1, 1])
    with pytest.raises(ValueError):
        anyonic_dim(cyc2, [1, -1])


def test_anyonic_trace(cyc2):
    identity = {(0, 0): cyc2.one, (1, 1): cyc2.one}
    assert cyc2.eq(anyonic_trace(cyc2, identity, [0, 1], 2), cyc2.zero)
    with pytest.raises(ValueError):
        anyonic_trace(cyc2, {(0, 1): cyc2.one}, [0, 1], 2)


def test_quasitriangular_coaction_makes_a_crossed_module(z2prime):
    H, qt = z2prime
    M = graded_module(H, [0, 1])
    result = crossed_module_check(M, quasitriangular_coaction(H, qt, M))
    assert result.report.passed, result.report.to_dict()
    assert result.inverse_coaction is not None


@pytest.mark.parametrize('n', [2, 3])
def test_nfold_module_algebra_for_group_algebra(qfield, n):
    report = nfold_module_algebra_check(group_algebra(qfield, [2]), n)
    assert report.passed, report.to_dict()


@pytest.mark.parametrize('n', [2, 3])
def test_nfold_module_algebra_for_double(qfield, n):
    D, _ = drinfeld_double(group_algebra(qfield, [2]))
    report = nfold_module_algebra_check(D, n)
    assert report.passed, report.to_dict()
