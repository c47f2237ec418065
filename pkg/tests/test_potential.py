import numpy as np
import pytest

from wsspectra import (
    CODATA_2018,
    ChannelSpec,
    DomainError,
    ParameterError,
    PhysicalConstants,
    PotentialParams,
    WSSpectraWarning,
    effective_potential,
    potential_curve,
    woods_saxon,
)
from wsspectra.potential import NEUTRON_MASS, centrifugal_term, equivalent_channels
from wsspectra.utils import Coordinate


def test_woods_saxon_shape(iron: PotentialParams) -> None:
    assert woods_saxon(iron.R0, iron) == pytest.approx(-iron.V0 / 2.0)
    assert woods_saxon(0.0, iron) == pytest.approx(-47.755, abs=0.01)
    assert abs(woods_saxon(iron.R0 + 30.0 * iron.a, iron)) < 1e-12 * iron.V0


def test_woods_saxon_rejects_negative_radius(iron: PotentialParams) -> None:
    with pytest.raises(DomainError):
        woods_saxon([-0.1, 1.0], iron)


def test_effective_potential_at_tabulated_minimum(iron: PotentialParams) -> None:
    value = effective_potential(2.95578498158, iron, ChannelSpec(0, 1, 3))
    assert value == pytest.approx(-40.71121848, rel=5e-4)


def test_effective_potential_without_barrier_is_woods_saxon(
    iron: PotentialParams,
) -> None:
    r = np.linspace(0.0, 15.0, 31)
    np.testing.assert_array_equal(
        effective_potential(r, iron, ChannelSpec(0, 0, 3)), woods_saxon(r, iron)
    )


def test_centrifugal_term_matches_strength_at_radius(iron: PotentialParams) -> None:
    c = ChannelSpec(0, 2, 3)
    r = np.linspace(0.5, 15.0, 50)
    barrier = effective_potential(r, iron, c) - woods_saxon(r, iron)
    expected = c.delta_tilde(iron) * iron.R0 ** 2 / r ** 2
    np.testing.assert_allclose(barrier, expected, rtol=1e-12)


def test_high_l_potential_is_monotone(iron: PotentialParams) -> None:
    r = np.linspace(0.5, 15.0, 400)
    v = effective_potential(r, iron, ChannelSpec(0, 8, 3))
    assert np.all(np.diff(v) < 0)


def test_centrifugal_term_singular_at_origin(iron: PotentialParams) -> None:
    with pytest.raises(DomainError):
        centrifugal_term(0.0, iron, ChannelSpec(0, 1, 3))
    assert centrifugal_term(0.0, iron, ChannelSpec(0, 0, 3)) == 0.0


def test_potential_curve_endpoints(iron: PotentialParams) -> None:
    c = ChannelSpec(0, 3, 3)
    curve = potential_curve(iron, c, 0.5, 15.0, 200)
    assert curve.coordinate is Coordinate.R
    assert len(curve) == 200
    assert curve.x[0] == 0.5 and curve.x[-1] == 15.0
    assert curve.y[-1] == pytest.approx(effective_potential(15.0, iron, c))


@pytest.mark.parametrize(
    "r_min,r_max,n", [(0.0, 15.0, 10), (5.0, 1.0, 10), (0.5, 15.0, 1)]
)
def test_potential_curve_invalid(
    iron: PotentialParams, r_min: float, r_max: float, n: int
) -> None:
    with pytest.raises(ParameterError):
        potential_curve(iron, ChannelSpec(0, 1, 3), r_min, r_max, n)


@pytest.mark.parametrize(
    "kwargs",
    [
        {"V0": 0.0, "R0": 4.0, "a": 0.6, "mu": 1.0},
        {"V0": 40.0, "R0": -4.0, "a": 0.6, "mu": 1.0},
        {"V0": 40.0, "R0": 4.0, "a": float("nan"), "mu": 1.0},
        {"V0": 40.0, "R0": 4.0, "a": 0.6, "mu": 0.0},
    ],
)
def test_create_rejects_non_positive(kwargs: dict) -> None:
    with pytest.raises(ParameterError):
        PotentialParams.create(**kwargs)


def test_create_rejects_bad_constants() -> None:
    with pytest.raises(ParameterError):
        PotentialParams.create(40.0, 4.0, 0.6, 1.0, PhysicalConstants(0.0, 931.0))


def test_create_warns_for_diffuse_surface() -> None:
    with pytest.warns(WSSpectraWarning):
        PotentialParams.create(40.0, 2.0, 0.9, 1.0)


def test_from_mass_number_iron() -> None:
    p = PotentialParams.from_mass_number(56)
    assert p.V0 == pytest.approx(47.78)
    assert p.R0 == pytest.approx(4.9162, rel=1e-4)
    assert p.a == 0.65
    assert p.mu == pytest.approx(0.990814, rel=1e-6)
    assert p.constants == CODATA_2018


def test_from_mass_number_light_core() -> None:
    p = PotentialParams.from_mass_number(1, r0=3.0)
    assert p.V0 == pytest.approx(40.63)
    assert p.mu < NEUTRON_MASS


@pytest.mark.parametrize("A", [0, -4, 2.5, True])
def test_from_mass_number_invalid(A: int) -> None:
    with pytest.raises(ParameterError):
        PotentialParams.from_mass_number(A)


def test_hbar2_over_2mu() -> None:
    constants = PhysicalConstants(hbar_c=10.0, amu_c2=50.0)
    assert constants.hbar2_over_2mu(2.0) == pytest.approx(0.5)


def test_hbar2_over_2mu_for_iron() -> None:
    assert CODATA_2018.hbar2_over_2mu(0.990814) == pytest.approx(21.0946, rel=1e-4)
    assert CODATA_2018.hbar2_over_2mu(2.0) < CODATA_2018.hbar2_over_2mu(1.0)


@pytest.mark.parametrize(
    "nr,l,D,l_tilde,factor",
    [(0, 0, 3, 0.0, 0.0), (0, 1, 3, 1.0, 2.0), (0, 0, 2, -0.5, -0.25)]
    + [(1, 0, 5, 1.0, 2.0), (0, 2, 4, 2.5, 8.75)],
)
def test_channel_l_tilde(
    nr: int, l: int, D: int, l_tilde: float, factor: float  # noqa: E741
) -> None:
    c = ChannelSpec.create(nr, l, D)
    assert c.l_tilde == l_tilde
    assert c.centrifugal_factor == factor


@pytest.mark.parametrize("nr,l,D", [(-1, 0, 3), (0, -1, 3), (0, 0, 1)])
def test_channel_create_invalid(nr: int, l: int, D: int) -> None:  # noqa: E741
    with pytest.raises(ParameterError):
        ChannelSpec.create(nr, l, D)


def test_equivalent_channels() -> None:
    found = equivalent_channels(ChannelSpec(1, 1, 3), range(2, 8))
    assert found == [ChannelSpec(1, 1, 3), ChannelSpec(1, 0, 5)]
    assert equivalent_channels(ChannelSpec(0, 2, 4), range(2, 7)) == [
        ChannelSpec(0, 3, 2),
        ChannelSpec(0, 2, 4),
        ChannelSpec(0, 1, 6),
    ]
