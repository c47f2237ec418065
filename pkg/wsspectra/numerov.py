"""Numerov shooting eigenvalue solver for the radial equation u'' = (V - E) u / (ħ²/2μ).

Two Hamiltonians are available. PEKERIS_APPROX integrates the approximated potential
on the whole line around R0, where its closed-form levels live. EXACT_EFFECTIVE
integrates the Woods-Saxon plus centrifugal potential on the half line, measuring
what the Pekeris expansion gives up.
"""

import enum
import logging
import typing

import numpy as np
from scipy.optimize import brentq

from ._types import FloatArray
from .exceptions import NoEigenvalueInBracket, NotConverged, ParameterError
from .nu import nu_energy
from .pekeris import PekerisExpansion, approx_effective_potential, expand
from .potential import ChannelSpec, PotentialParams, effective_potential
from .utils import sign_changes

logger = logging.getLogger(__name__)

DOMAIN_HALF_WIDTH = 25.0  # in units of a
STEPS_PER_DIFFUSENESS = 50
RESCALE_LIMIT = 1e150
MAX_SUBDIVISIONS = 40


class Hamiltonian(str, enum.Enum):
    PEKERIS_APPROX = "pekeris"
    EXACT_EFFECTIVE = "exact"


class ShootingConfig(typing.NamedTuple):
    """Grid and solver settings; None fields take defaults that depend on the well.

    Args:
        r_min: Inner end of the grid in fm.
        r_max: Outer end of the grid in fm.
        step: Grid spacing in fm, a/50 by default.
        energy_bracket: Window searched for eigenvalues in MeV.
        tol_energy: Absolute energy tolerance of the root search in MeV.
        max_iter: Iteration cap of the root search.
        scan_steps: Number of energies in the node-counting scan.
        match_threshold: Largest accepted log-derivative mismatch, times a.
    """

    r_min: typing.Optional[float] = None
    r_max: typing.Optional[float] = None
    step: typing.Optional[float] = None
    energy_bracket: typing.Optional[typing.Tuple[float, float]] = None
    tol_energy: float = 1e-9
    max_iter: int = 200
    scan_steps: int = 400
    match_threshold: float = 1e-6

    def resolve(self, hamiltonian: Hamiltonian, p: PotentialParams) -> "ShootingConfig":
        """Fills in defaults for the given well.

        Raises:
            ParameterError: If the resulting settings are inconsistent.
        """
        if hamiltonian is Hamiltonian.PEKERIS_APPROX:
            r_min = p.R0 - DOMAIN_HALF_WIDTH * p.a
        else:
            r_min = 1e-6
        resolved = self._replace(
            r_min=r_min if self.r_min is None else self.r_min,
            r_max=p.R0 + DOMAIN_HALF_WIDTH * p.a if self.r_max is None else self.r_max,
            step=p.a / STEPS_PER_DIFFUSENESS if self.step is None else self.step,
        )
        assert resolved.r_min is not None and resolved.r_max is not None
        assert resolved.step is not None
        if not resolved.r_min < resolved.r_max:
            raise ParameterError(
                "r_min={} must be below r_max={}".format(resolved.r_min, resolved.r_max)
            )
        if not resolved.step > 0 or not resolved.tol_energy > 0:
            raise ParameterError("Step and energy tolerance must be positive")
        if resolved.max_iter < 1 or resolved.scan_steps < 2:
            raise ParameterError("max_iter must be >= 1 and scan_steps >= 2")
        return resolved


class OracleResult(typing.NamedTuple):
    """Outcome of one shooting run.

    Args:
        energy: Eigenvalue in MeV.
        node_count: Interior nodes of the matched solution.
        matching_residual: a |u_out'/u_out - u_in'/u_in| at the matching point.
        converged: Whether the residual is under the configured threshold.
        hamiltonian: Which Hamiltonian was integrated.
        step: Grid spacing used, in fm.
    """

    energy: float
    node_count: int
    matching_residual: float
    converged: bool
    hamiltonian: Hamiltonian
    step: float


class ScanBracket(typing.NamedTuple):
    """An energy interval holding exactly one eigenvalue with node_count nodes."""

    lower: float
    upper: float
    node_count: int


class RadialProblem:
    """A discretized radial equation ready for shooting.

    Args:
        r: Uniform grid in fm.
        v: Potential on the grid in MeV.
        hbar2_over_2mu: ħ²/2μ in MeV fm².
        hamiltonian: Which boundary behavior to seed with.
        left_asymptote: Potential limit beyond the inner end, whole-line problems only.
        right_asymptote: Potential limit beyond the outer end.
        a: Diffuseness in fm, the length unit of the matching residual.
        l_tilde: Effective angular momentum, half-line problems only.
    """

    def __init__(
        self,
        r: FloatArray,
        v: FloatArray,
        hbar2_over_2mu: float,
        hamiltonian: Hamiltonian,
        left_asymptote: float,
        right_asymptote: float,
        a: float,
        l_tilde: float = 0.0,
    ):
        self.r = r
        self.v = v
        self.h = float(r[1] - r[0])
        self.hbar2_over_2mu = hbar2_over_2mu
        self.hamiltonian = hamiltonian
        self.left_asymptote = left_asymptote
        self.right_asymptote = right_asymptote
        self.a = a
        self.l_tilde = l_tilde

    @classmethod
    def build(
        cls,
        hamiltonian: Hamiltonian,
        p: PotentialParams,
        c: ChannelSpec,
        cfg: ShootingConfig,
        px: typing.Optional[PekerisExpansion] = None,
    ) -> "RadialProblem":
        """Discretizes a channel on the grid of a resolved config."""
        assert cfg.r_min is not None and cfg.r_max is not None and cfg.step is not None
        n = max(int(round((cfg.r_max - cfg.r_min) / cfg.step)), 4)
        r = np.linspace(cfg.r_min, cfg.r_max, n + 1)
        if hamiltonian is Hamiltonian.PEKERIS_APPROX:
            px = expand(p, c) if px is None else px
            v = np.asarray(approx_effective_potential(r, px, p), dtype=float)
            return cls(
                r, v, p.hbar2_over_2mu, hamiltonian, px.left_asymptote, px.K0, p.a
            )
        v = np.asarray(effective_potential(r, p, c), dtype=float)
        return cls(
            r, v, p.hbar2_over_2mu, hamiltonian, float(v[0]), 0.0, p.a, c.l_tilde
        )

    @property
    def threshold(self) -> float:
        """Lowest continuum edge; bound levels lie below it."""
        if self.hamiltonian is Hamiltonian.PEKERIS_APPROX:
            return min(self.left_asymptote, self.right_asymptote)
        return self.right_asymptote

    def default_window(self) -> typing.Tuple[float, float]:
        v_min = float(np.min(self.v))
        margin = 1e-9 * max(1.0, abs(self.threshold), abs(v_min))
        return v_min + margin, self.threshold - margin

    def _decay_rate(self, energies: FloatArray, limit: float) -> FloatArray:
        return np.sqrt(np.clip((limit - energies) / self.hbar2_over_2mu, 0.0, None))

    def _outward_seeds(
        self, energies: FloatArray
    ) -> typing.Tuple[FloatArray, FloatArray]:
        if self.hamiltonian is Hamiltonian.PEKERIS_APPROX:
            kappa = self._decay_rate(energies, self.left_asymptote)
            return np.ones_like(energies), np.exp(kappa * self.h)
        power = self.l_tilde + 1.0
        return (
            np.full_like(energies, self.r[0] ** power),
            np.full_like(energies, self.r[1] ** power),
        )

    def _inward_seeds(
        self, energies: FloatArray
    ) -> typing.Tuple[FloatArray, FloatArray]:
        kappa = self._decay_rate(energies, self.right_asymptote)
        return np.ones_like(energies), np.exp(kappa * self.h)

    def _weights(self, energies: FloatArray, v: FloatArray) -> FloatArray:
        k2 = (energies[:, None] - v[None, :]) / self.hbar2_over_2mu
        return typing.cast(FloatArray, 1.0 + self.h ** 2 * k2 / 12.0)

    def _march(self, f: FloatArray, u0: FloatArray, u1: FloatArray) -> typing.Any:
        """Runs the Numerov recurrence across the grid for a batch of energies.

        Returns the number of sign changes of each solution.
        """
        nodes = np.zeros(f.shape[0], dtype=int)
        prev, cur = u0.copy(), u1.copy()
        nodes += (prev * cur) < 0
        for i in range(1, f.shape[1] - 1):
            nxt = ((12.0 - 10.0 * f[:, i]) * cur - f[:, i - 1] * prev) / f[:, i + 1]
            nodes += (nxt * cur) < 0
            prev, cur = cur, nxt
            big = np.abs(cur) > RESCALE_LIMIT
            if np.any(big):
                logger.debug(
                    "rescaling %d solutions at r=%.4f", int(big.sum()), self.r[i]
                )
                prev[big] /= RESCALE_LIMIT
                cur[big] /= RESCALE_LIMIT
        return nodes

    @staticmethod
    def _march_single(f: typing.Sequence[float], u0: float, u1: float) -> FloatArray:
        # Plain floats: the per-step overhead of numpy dominates for one energy.
        u = [0.0] * len(f)
        u[0], u[1] = u0, u1
        for i in range(1, len(f) - 1):
            u[i + 1] = ((12.0 - 10.0 * f[i]) * u[i] - f[i - 1] * u[i - 1]) / f[i + 1]
            if abs(u[i + 1]) > RESCALE_LIMIT:
                logger.debug("rescaling solution at grid index %d", i + 1)
                u[: i + 2] = [value / RESCALE_LIMIT for value in u[: i + 2]]
        return np.array(u)

    def node_counts(self, energies: FloatArray) -> typing.Any:
        """Sign changes of the outward solution over the whole grid, per energy."""
        energies = np.asarray(energies, dtype=float)
        u0, u1 = self._outward_seeds(energies)
        return self._march(self._weights(energies, self.v), u0, u1)

    def outward(self, energy: float, stop: int) -> FloatArray:
        energies = np.array([energy])
        f = self._weights(energies, self.v[: stop + 1])[0]
        u0, u1 = self._outward_seeds(energies)
        return self._march_single(f.tolist(), float(u0[0]), float(u1[0]))

    def inward(self, energy: float, stop: int) -> FloatArray:
        """Solution integrated from the outer end down to index stop, in grid order."""
        energies = np.array([energy])
        f = self._weights(energies, self.v[stop:][::-1])[0]
        u0, u1 = self._inward_seeds(energies)
        u = self._march_single(f.tolist(), float(u0[0]), float(u1[0]))
        return typing.cast(FloatArray, u[::-1])

    def matching_index(self, energy: float) -> int:
        """Outermost classical turning point, or the potential minimum without one."""
        allowed = np.nonzero(self.v < energy)[0]
        m = int(allowed[-1]) if allowed.size else int(np.argmin(self.v))
        return min(max(m, 2), len(self.r) - 3)

    def solutions(
        self, energy: float, m: int
    ) -> typing.Tuple[FloatArray, FloatArray]:
        """Outward solution up to m+1 and inward solution from m-1, max |u| = 1."""
        out = self.outward(energy, m + 1)
        inn = self.inward(energy, m - 1)
        return out / np.max(np.abs(out)), inn / np.max(np.abs(inn))

    def mismatch(self, energy: float, m: int) -> float:
        """Discrete Wronskian of the two solutions across (m, m+1), zero at levels."""
        out, inn = self.solutions(energy, m)
        # inn[0] sits at index m-1.
        return float(out[m + 1] * inn[1] - out[m] * inn[2])


def _scan(problem: RadialProblem, energies: FloatArray) -> typing.List[ScanBracket]:
    counts = problem.node_counts(energies)
    brackets: typing.List[ScanBracket] = []
    for i in range(len(energies) - 1):
        lo, hi = float(energies[i]), float(energies[i + 1])
        n_lo, n_hi = int(counts[i]), int(counts[i + 1])
        if n_hi > n_lo:
            brackets.extend(_split(problem, lo, hi, n_lo, n_hi, 0))
    return brackets


def _split(
    problem: RadialProblem, lo: float, hi: float, n_lo: int, n_hi: int, depth: int
) -> typing.List[ScanBracket]:
    if n_hi - n_lo == 1:
        return [ScanBracket(lo, hi, n_lo)]
    if depth >= MAX_SUBDIVISIONS:
        logger.warning(
            "unresolved cluster of %d levels in [%r, %r]", n_hi - n_lo, lo, hi
        )
        return []
    mid = 0.5 * (lo + hi)
    n_mid = int(problem.node_counts(np.array([mid]))[0])
    found = []
    if n_mid > n_lo:
        found.extend(_split(problem, lo, mid, n_lo, n_mid, depth + 1))
    if n_hi > n_mid:
        found.extend(_split(problem, mid, hi, n_mid, n_hi, depth + 1))
    return found


def node_count_scan(
    hamiltonian: Hamiltonian,
    p: PotentialParams,
    c: ChannelSpec,
    cfg: ShootingConfig,
    E_lo: float,
    E_hi: float,
    n_steps: int,
    px: typing.Optional[PekerisExpansion] = None,
) -> typing.List[ScanBracket]:
    """Brackets every eigenvalue in [E_lo, E_hi] by node counts of the outward solution.

    Raises:
        ParameterError: If E_lo >= E_hi or n_steps < 2.
    """
    if not E_lo < E_hi or n_steps < 2:
        raise ParameterError(
            "Invalid scan window [{}, {}] with {} steps".format(E_lo, E_hi, n_steps)
        )
    problem = RadialProblem.build(hamiltonian, p, c, cfg.resolve(hamiltonian, p), px)
    brackets = _scan(problem, np.linspace(E_lo, E_hi, n_steps))
    logger.debug("scan [%r, %r] found %d brackets", E_lo, E_hi, len(brackets))
    return brackets


def _refine(
    problem: RadialProblem, bracket: ScanBracket, cfg: ShootingConfig
) -> OracleResult:
    m = problem.matching_index(0.5 * (bracket.lower + bracket.upper))

    def mismatch(energy: float) -> float:
        return problem.mismatch(energy, m)

    try:
        energy, info = brentq(
            mismatch,
            bracket.lower,
            bracket.upper,
            xtol=cfg.tol_energy,
            maxiter=cfg.max_iter,
            full_output=True,
            disp=False,
        )
    except ValueError as exc:
        raise NoEigenvalueInBracket(
            "Matching function keeps its sign on [{!r}, {!r}]".format(
                bracket.lower, bracket.upper
            )
        ) from exc
    if not info.converged:
        raise NotConverged(
            "Root search stopped after {} iterations: {}".format(
                info.iterations, info.flag
            )
        )
    logger.debug("brentq converged in %d iterations to %r", info.iterations, energy)

    out, inn = problem.solutions(energy, m)
    h = problem.h
    d_out = (out[m + 1] - out[m - 1]) / (2.0 * h)
    d_in = (inn[2] - inn[0]) / (2.0 * h)
    log_gap = abs(d_out / out[m] - d_in / inn[1])
    residual = float(log_gap) * problem.a
    joined = np.concatenate([out[: m + 1], inn[2:] * (out[m] / inn[1])])
    return OracleResult(
        energy=float(energy),
        node_count=sign_changes(joined),
        matching_residual=residual,
        converged=residual < cfg.match_threshold,
        hamiltonian=problem.hamiltonian,
        step=h,
    )


def shoot(
    hamiltonian: Hamiltonian,
    p: PotentialParams,
    c: ChannelSpec,
    px: typing.Optional[PekerisExpansion] = None,
    cfg: ShootingConfig = ShootingConfig(),
) -> OracleResult:
    """Finds the eigenvalue with c.nr nodes.

    Raises:
        NoEigenvalueInBracket: If the window holds no level with that node count.
        NotConverged: If the root search hits its iteration cap.
    """
    cfg = cfg.resolve(hamiltonian, p)
    problem = RadialProblem.build(hamiltonian, p, c, cfg, px)
    E_lo, E_hi = cfg.energy_bracket or problem.default_window()
    if not E_lo < E_hi:
        raise NoEigenvalueInBracket(
            "Empty energy window [{!r}, {!r}] below threshold".format(E_lo, E_hi)
        )
    brackets = _scan(problem, np.linspace(E_lo, E_hi, cfg.scan_steps))
    for bracket in brackets:
        if bracket.node_count == c.nr:
            result = _refine(problem, bracket, cfg)
            logger.info(
                "%s %s: E=%r nodes=%d residual=%.2e",
                hamiltonian.value,
                c,
                result.energy,
                result.node_count,
                result.matching_residual,
            )
            return result
    raise NoEigenvalueInBracket(
        "No level with {} nodes in [{!r}, {!r}] for {} ({} levels found)".format(
            c.nr, E_lo, E_hi, hamiltonian.value, len(brackets)
        )
    )


def pekeris_error(
    p: PotentialParams,
    c: ChannelSpec,
    px: typing.Optional[PekerisExpansion] = None,
    cfg: ShootingConfig = ShootingConfig(),
) -> float:
    """Exact-Hamiltonian eigenvalue minus the closed-form energy, in MeV."""
    px = expand(p, c) if px is None else px
    exact = shoot(Hamiltonian.EXACT_EFFECTIVE, p, c, px, cfg)
    return exact.energy - nu_energy(p, c, px)


def richardson_check(
    hamiltonian: Hamiltonian,
    p: PotentialParams,
    c: ChannelSpec,
    px: typing.Optional[PekerisExpansion] = None,
    cfg: ShootingConfig = ShootingConfig(),
) -> typing.Tuple[float, float, float]:
    """Energies at step h and h/2 and their relative change."""
    coarse_cfg = cfg.resolve(hamiltonian, p)
    assert coarse_cfg.step is not None
    coarse = shoot(hamiltonian, p, c, px, coarse_cfg)
    fine = shoot(hamiltonian, p, c, px, coarse_cfg._replace(step=coarse_cfg.step / 2.0))
    change = abs(fine.energy - coarse.energy) / max(abs(fine.energy), 1e-300)
    return coarse.energy, fine.energy, change


