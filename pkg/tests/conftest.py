import pytest

from wsspectra import CODATA_2018, TABULATED, PekerisExpansion, PotentialParams


@pytest.fixture
def iron() -> PotentialParams:
    """⁵⁶Fe with the constants its published tables were computed with."""
    return PotentialParams(47.78, 4.9162, 0.65, 0.990814, TABULATED)


@pytest.fixture
def iron_codata() -> PotentialParams:
    return PotentialParams(47.78, 4.9162, 0.65, 0.990814, CODATA_2018)


@pytest.fixture
def symmetric_well(iron: PotentialParams) -> PekerisExpansion:
    """A hand-built expansion with β² = γ² = 20, whose levels are -(4 - nr)²/4."""
    scale = iron.energy_scale
    nan = float("nan")
    return PekerisExpansion(
        x_l=0.0,
        r_l=iron.R0,
        C0=0.0,
        C1=0.0,
        C2=0.0,
        K0=0.0,
        K1=20.0 * scale,
        K2=20.0 * scale,
        veff_min=nan,
    )
