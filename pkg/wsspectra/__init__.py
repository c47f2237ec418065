"""Woods-Saxon bound states in D dimensions through the Pekeris approximation."""

from .exceptions import (
    ConfigError,
    ConsistencyError,
    DivergentIntegral,
    DomainError,
    FormulaInvalid,
    NoEigenvalueInBracket,
    NoExtremum,
    NotConverged,
    ParameterError,
    WSSpectraError,
    WSSpectraWarning,
)
from .nu import BoundStatus, ChannelSolution, DimensionlessTriple, classify, nu_energy
from .numerov import Hamiltonian, OracleResult, ShootingConfig, node_count_scan, shoot
from .pekeris import PekerisExpansion, expand, solve_extremum
from .potential import (
    CODATA_2018,
    TABULATED,
    ChannelSpec,
    PhysicalConstants,
    PotentialParams,
    effective_potential,
    potential_curve,
    woods_saxon,
)
from .solver import solve_channel, solve_channels
from .susy import SuperpotentialParams, superpotential_params, susy_energy
from .wavefunction import NormalizationMeasure, WavefunctionDescriptor, normalize

__version__ = "0.1.0"

__all__ = [
    "PhysicalConstants",
    "PotentialParams",
    "ChannelSpec",
    "CODATA_2018",
    "TABULATED",
    "woods_saxon",
    "effective_potential",
    "potential_curve",
    "PekerisExpansion",
    "solve_extremum",
    "expand",
    "BoundStatus",
    "DimensionlessTriple",
    "ChannelSolution",
    "nu_energy",
    "classify",
    "SuperpotentialParams",
    "superpotential_params",
    "susy_energy",
    "NormalizationMeasure",
    "WavefunctionDescriptor",
    "normalize",
    "Hamiltonian",
    "ShootingConfig",
    "OracleResult",
    "shoot",
    "node_count_scan",
    "solve_channel",
    "solve_channels",
    "WSSpectraError",
    "ParameterError",
    "DomainError",
    "NoExtremum",
    "FormulaInvalid",
    "ConsistencyError",
    "DivergentIntegral",
    "NoEigenvalueInBracket",
    "NotConverged",
    "ConfigError",
    "WSSpectraWarning",
]
