"""Per-channel pipeline from the expansion to the optional numerical oracle."""

import logging
import typing

from .exceptions import (
    ConsistencyError,
    DivergentIntegral,
    FormulaInvalid,
    NoEigenvalueInBracket,
    NotConverged,
)
from .nu import ChannelSolution, solve
from .numerov import Hamiltonian, ShootingConfig, pekeris_error, shoot
from .potential import ChannelSpec, PotentialParams
from .susy import susy_energy
from .wavefunction import NormalizationMeasure, WavefunctionDescriptor, z_coverage_gap

logger = logging.getLogger(__name__)

CROSS_CHECK_RTOL = 1e-12


def _cross_check_floor(solution: ChannelSolution) -> float:
    assert solution.expansion is not None and solution.energy is not None
    return max(1.0, abs(solution.energy), *(abs(k) for k in solution.expansion.k))


def solve_channel(
    p: PotentialParams,
    c: ChannelSpec,
    measure: NormalizationMeasure = NormalizationMeasure.ORTHOGONALITY,
    oracle_cfg: typing.Optional[ShootingConfig] = None,
) -> ChannelSolution:
    """Runs every stage for one channel and collects their outcomes.

    Failures of individual stages become diagnostics; only the NU/SUSY disagreement
    is flagged on the solution, for the CLI to turn into its exit code.
    """
    solution = solve(p, c)
    if solution.expansion is None or solution.energy is None:
        return solution
    px = solution.expansion
    diagnostics = list(solution.diagnostics)
    updates: typing.Dict[str, typing.Any] = {}

    try:
        susy = susy_energy(p, c, px, c.nr)
    except FormulaInvalid as exc:
        diagnostics.append("susy: {}".format(exc))
    except ConsistencyError as exc:
        diagnostics.append("susy: {}".format(exc))
        updates["cross_check_failed"] = True
    else:
        updates["susy_energy"] = susy
        gap = abs(susy - solution.energy)
        if gap > CROSS_CHECK_RTOL * _cross_check_floor(solution):
            logger.error("NU and SUSY energies differ by %.3e MeV for %s", gap, c)
            diagnostics.append("susy: energies differ by {:.3e} MeV".format(gap))
            updates["cross_check_failed"] = True

    triple = solution.triple
    if triple is not None:
        try:
            updates["wavefunction"] = WavefunctionDescriptor.from_triple(
                p, c, triple, measure
            )
        except DivergentIntegral as exc:
            diagnostics.append("wavefunction: {}".format(exc))
    diagnostics.append("z(r=0) falls short of 1 by {:.3e}".format(z_coverage_gap(p)))

    if oracle_cfg is not None:
        try:
            updates["oracle"] = shoot(Hamiltonian.PEKERIS_APPROX, p, c, px, oracle_cfg)
        except (NoEigenvalueInBracket, NotConverged) as exc:
            diagnostics.append("oracle: {}".format(exc))
        try:
            updates["pekeris_error"] = pekeris_error(p, c, px, oracle_cfg)
        except (NoEigenvalueInBracket, NotConverged) as exc:
            diagnostics.append("exact oracle: {}".format(exc))

    return solution._replace(diagnostics=tuple(diagnostics), **updates)


def solve_channels(
    p: PotentialParams,
    channels: typing.Iterable[ChannelSpec],
    measure: NormalizationMeasure = NormalizationMeasure.ORTHOGONALITY,
    oracle_cfg: typing.Optional[ShootingConfig] = None,
) -> typing.List[ChannelSolution]:
    """Solves channels in (D, l, nr) order, whatever order they are given in."""
    ordered = sorted(channels, key=lambda c: (c.D, c.l, c.nr))
    return [solve_channel(p, c, measure, oracle_cfg) for c in ordered]
