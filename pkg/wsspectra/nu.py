"""Closed-form bound-state spectrum of the Pekeris-approximated Hamiltonian.

The spectrum is expressed through three dimensionless numbers measured in units of
ħ²/(2μa²): ε² = (K0 - E), β² = K1 and γ² = K2.
"""

import enum
import logging
import math
import typing

from .exceptions import ConsistencyError, FormulaInvalid, NoExtremum
from .pekeris import PekerisExpansion, expand
from .potential import ChannelSpec, PotentialParams

if typing.TYPE_CHECKING:
    from wsspectra.numerov import OracleResult  # pragma: nocover
    from wsspectra.wavefunction import WavefunctionDescriptor  # pragma: nocover

logger = logging.getLogger(__name__)

PATH_RTOL = 1e-10


class BoundStatus(str, enum.Enum):
    """Classification of a channel; values are the serialized labels."""

    BOUND = "Bound"
    UNBOUND_ENERGY_RANGE = "Unbound"
    NO_ADMISSIBLE_NR = "NoBoundStates"
    NO_EXTREMUM = "NoExtremum"
    FORMULA_INVALID = "FormulaInvalid"


class DimensionlessTriple(typing.NamedTuple):
    """Dimensionless spectrum parameters of one level.

    Args:
        epsilon: Exponent of z in the wavefunction.
        beta_sq: K1 in units of ħ²/(2μa²).
        gamma_sq: K2 in units of ħ²/(2μa²).
        eta: Exponent of (1 - z), √(ε² - β² + γ²).
        n_prime: (√(1 + 4γ²) - 1)/2 - nr.
    """

    epsilon: float
    beta_sq: float
    gamma_sq: float
    eta: float
    n_prime: float

    @property
    def normalizable(self) -> bool:
        """Whether the polynomial solution decays on both sides, n' - ε > 0."""
        return self.epsilon > 0 and self.n_prime - self.epsilon > 0


class ChannelSolution(typing.NamedTuple):
    """Everything computed for one channel.

    Args:
        channel: The quantum numbers.
        expansion: Pekeris expansion, None when the potential has no minimum.
        energy: Closed-form energy in MeV, None when not evaluable.
        status: Classification.
        triple: Dimensionless parameters at the closed-form energy.
        diagnostics: Human-readable notes gathered along the way.
        wavefunction: Normalized wavefunction descriptor.
        susy_energy: Energy from the shape-invariance recursion.
        oracle: Numerical eigenvalue, when requested.
        pekeris_error: Exact-Hamiltonian eigenvalue minus the closed form.
        cross_check_failed: Whether the NU and SUSY energies disagree.
    """

    channel: ChannelSpec
    expansion: typing.Optional[PekerisExpansion]
    energy: typing.Optional[float]
    status: BoundStatus
    triple: typing.Optional[DimensionlessTriple] = None
    diagnostics: typing.Tuple[str, ...] = ()
    wavefunction: typing.Optional["WavefunctionDescriptor"] = None
    susy_energy: typing.Optional[float] = None
    oracle: typing.Optional["OracleResult"] = None
    pekeris_error: typing.Optional[float] = None
    cross_check_failed: bool = False


def spectrum_parameters(
    p: PotentialParams, px: PekerisExpansion
) -> typing.Tuple[float, float]:
    """Returns (β², γ²)."""
    scale = p.energy_scale
    return px.K1 / scale, px.K2 / scale


def _level_root(p: PotentialParams, px: PekerisExpansion) -> float:
    """√(1 + 4γ²) = √(1 + 8μa²K2/ħ²)."""
    _, gamma_sq = spectrum_parameters(p, px)
    radicand = 1.0 + 4.0 * gamma_sq
    if radicand < 0.0:
        raise FormulaInvalid("1 + 4 gamma^2 = {} is negative".format(radicand))
    return math.sqrt(radicand)


def n_prime(p: PotentialParams, c: ChannelSpec, px: PekerisExpansion) -> float:
    return (_level_root(p, px) - 1.0) / 2.0 - c.nr


def dimensionless(
    p: PotentialParams, c: ChannelSpec, px: PekerisExpansion, E: float
) -> DimensionlessTriple:
    """Dimensionless parameters at energy E.

    Raises:
        FormulaInvalid: If E >= K0, where ε would be imaginary.
    """
    if not E < px.K0:
        raise FormulaInvalid("E = {} is not below K0 = {}".format(E, px.K0))
    beta_sq, gamma_sq = spectrum_parameters(p, px)
    epsilon = math.sqrt(-(E - px.K0) / p.energy_scale)
    radicand = epsilon ** 2 - beta_sq + gamma_sq
    # Rounding can leave a tiny negative where the exact value is zero.
    if radicand < 0.0 and radicand > -1e-12 * max(1.0, epsilon ** 2):
        radicand = 0.0
    eta = math.sqrt(radicand) if radicand >= 0.0 else float("nan")
    return DimensionlessTriple(
        epsilon=epsilon,
        beta_sq=beta_sq,
        gamma_sq=gamma_sq,
        eta=eta,
        n_prime=n_prime(p, c, px),
    )


def _shifted_root(p: PotentialParams, c: ChannelSpec, px: PekerisExpansion) -> float:
    S = _level_root(p, px) - 2.0 * c.nr - 1.0
    if not S > 0.0:
        raise FormulaInvalid(
            "Level root S = {} is not positive for nr = {}".format(S, c.nr)
        )
    return S


def nu_energy_from_epsilon(
    p: PotentialParams, c: ChannelSpec, px: PekerisExpansion
) -> float:
    """Energy through ε = (n' + (β² - γ²)/n')/2 and E = K0 - ħ²ε²/(2μa²)."""
    S = _shifted_root(p, c, px)
    beta_sq, gamma_sq = spectrum_parameters(p, px)
    half_n = S / 2.0
    epsilon = 0.5 * (half_n + (beta_sq - gamma_sq) / half_n)
    return px.K0 - p.energy_scale * epsilon ** 2


def nu_energy(p: PotentialParams, c: ChannelSpec, px: PekerisExpansion) -> float:
    """Closed-form energy of level nr, in MeV.

    Raises:
        FormulaInvalid: If 1 + 4γ² < 0 or the level root S <= 0.
        ConsistencyError: If the ε route disagrees with the direct formula.
    """
    S = _shifted_root(p, c, px)
    scale = p.energy_scale
    diff = px.K1 - px.K2
    energy = px.K0 - diff / 2.0 - scale * S ** 2 / 16.0 - diff ** 2 / (scale * S ** 2)
    other = nu_energy_from_epsilon(p, c, px)
    floor = max(1.0, abs(px.K0), abs(px.K1), abs(px.K2))
    if abs(energy - other) > PATH_RTOL * floor:
        raise ConsistencyError(
            "Energy routes disagree for {}: {!r} vs {!r}".format(c, energy, other)
        )
    return energy


def max_nr(p: PotentialParams, c: ChannelSpec, px: PekerisExpansion) -> int:
    """Largest nr strictly below (√(1 + 4γ²) - 1)/2, or -1 when there is none."""
    try:
        bound = (_level_root(p, px) - 1.0) / 2.0
    except FormulaInvalid:
        return -1
    if bound <= 0.0:
        return -1
    return int(math.ceil(bound)) - 1


def max_normalizable_nr(
    p: PotentialParams, c: ChannelSpec, px: PekerisExpansion
) -> int:
    """Largest nr whose polynomial solution is square integrable, or -1.

    Requires n' > 0 and |β² - γ²| < n'².
    """
    beta_sq, gamma_sq = spectrum_parameters(p, px)
    for nr in range(max_nr(p, c, px), -1, -1):
        np_ = n_prime(p, c.with_nr(nr), px)
        if np_ > 0.0 and abs(beta_sq - gamma_sq) < np_ ** 2:
            return nr
    return -1


def depth_condition(p: PotentialParams, c: ChannelSpec) -> bool:
    """V0 R0³ >= 4 (ħ²/μ) l̃(l̃+1) a, with l̃(l̃+1) clamped at zero."""
    factor = max(c.centrifugal_factor, 0.0)
    return p.V0 * p.R0 ** 3 >= 4.0 * 2.0 * p.hbar2_over_2mu * factor * p.a


def classify(
    p: PotentialParams,
    c: ChannelSpec,
    px: typing.Optional[PekerisExpansion],
    E: typing.Optional[float],
) -> BoundStatus:
    """Decides whether a closed-form level is a physical bound state."""
    if px is None:
        return BoundStatus.NO_EXTREMUM
    if c.nr > max_nr(p, c, px):
        return BoundStatus.NO_ADMISSIBLE_NR
    if E is None or not math.isfinite(E) or E >= px.K0:
        return BoundStatus.FORMULA_INVALID
    if not -p.V0 < E < 0.0:
        return BoundStatus.UNBOUND_ENERGY_RANGE
    if not depth_condition(p, c):
        return BoundStatus.NO_ADMISSIBLE_NR
    return BoundStatus.BOUND


def solve(p: PotentialParams, c: ChannelSpec) -> ChannelSolution:
    """Runs the expansion and the closed-form spectrum for one channel."""
    diagnostics = []
    if c.centrifugal_factor < 0.0:
        diagnostics.append(
            "delta_tilde < 0: attractive centrifugal term, depth condition uses "
            "l~(l~+1) clamped at 0"
        )

    try:
        px = expand(p, c)
    except NoExtremum as exc:
        diagnostics.append(str(exc))
        return ChannelSolution(
            channel=c,
            expansion=None,
            energy=None,
            status=BoundStatus.NO_EXTREMUM,
            diagnostics=tuple(diagnostics),
        )
    except ConsistencyError as exc:
        logger.error("%s", exc)
        diagnostics.append(str(exc))
        return ChannelSolution(
            channel=c,
            expansion=None,
            energy=None,
            status=BoundStatus.FORMULA_INVALID,
            diagnostics=tuple(diagnostics),
            cross_check_failed=True,
        )

    energy: typing.Optional[float] = None
    triple: typing.Optional[DimensionlessTriple] = None
    cross_check_failed = False
    try:
        energy = nu_energy(p, c, px)
        triple = dimensionless(p, c, px, energy)
    except FormulaInvalid as exc:
        diagnostics.append(str(exc))
    except ConsistencyError as exc:
        logger.error("%s", exc)
        diagnostics.append(str(exc))
        energy, cross_check_failed = None, True

    status = classify(p, c, px, energy)
    if triple is not None and not triple.normalizable:
        diagnostics.append(
            "closed-form level is not normalizable: n' - epsilon = {:.6g}".format(
                triple.n_prime - triple.epsilon
            )
        )
    diagnostics.append(
        "normalizable levels: nr <= {}".format(max_normalizable_nr(p, c, px))
    )
    logger.info("%s -> %s E=%r", c, status.value, energy)
    return ChannelSolution(
        channel=c,
        expansion=px,
        energy=energy,
        status=status,
        triple=triple,
        diagnostics=tuple(diagnostics),
        cross_check_failed=cross_check_failed,
    )
