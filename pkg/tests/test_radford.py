import pytest

from src.core.errors import NotAProjection
from src.hopf.bosonize import bosonize, super_line
from src.hopf.findim import group_algebra, zn_prime
from src.hopf.radford import radford_decompose
from src.hopf.transmute import identity_map, tables_agree


@pytest.fixture
def super_boson(cyc2):
    H, qt = zn_prime(cyc2, 2)
    return H, bosonize(H, qt, super_line(cyc2))


def test_identity_projection_has_trivial_factor(cyc3):
    H = group_algebra(cyc3, [3])
    result = radford_decompose(H, H, identity_map(H), identity_map(H))
    assert result.braided.dim == 1
    assert result.braided.labels == ['1']
    assert result.report.passed, result.report.to_dict()


def test_bosonization_splits_back(super_boson):
    H, boson = super_boson
    result = radford_decompose(boson.hopf, H, boson.projection, boson.inclusion)
    assert result.braided.dim == 2
    assert result.pivots == (0, 2)
    assert result.braided.labels == ['1|1', 'θ|1']
    assert result.report.passed, result.report.to_dict()


def test_split_factor_matches_super_line(super_boson, cyc2):
    H, boson = super_boson
    result = radford_decompose(boson.hopf, H, boson.projection, boson.inclusion)
    assert tables_agree(result.braided, super_line(cyc2)).passed


def test_report_names(super_boson):
    H, boson = super_boson
    names = {check.name for check in radford_decompose(boson.hopf, H, boson.projection, boson.inclusion).report.checks}
    assert {'image_closed', 'theta_bijective', 'theta_multiplicative', 'theta_comultiplicative',
            'theta_inverse', 'rad_hopf'} <= names
    assert any(name.startswith('crossed.') for name in names)
    assert any(name.startswith('braided.') for name in names)


def test_odd_generator_acts_by_sign(super_boson, cyc2):
    H, boson = super_boson
    B = radford_decompose(boson.hopf, H, boson.projection, boson.inclusion).braided
    assert B.action.act_basis(1, 1) == {1: -cyc2.one}
    assert B.psi[(1, 1)] == {(1, 1): -cyc2.one}


def test_section_must_split_projection(super_boson):
    H, boson = super_boson
    unit_everywhere = {h: dict(boson.inclusion[0]) for h in range(H.dim)}
    with pytest.raises(NotAProjection):
        radford_decompose(boson.hopf, H, boson.projection, unit_everywhere)
