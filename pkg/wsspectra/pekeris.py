"""Pekeris expansion of the centrifugal barrier around the effective-potential minimum.

Distances here are measured by the dimensionless x = (r - R0) / R0. The barrier
δ̃/(1+x)² is replaced by δ̃(C0 + C1 s + C2 s²) with s = 1/(1 + e^(αx)), matched in
value, slope and curvature at the minimum x_l.
"""

import logging
import math
import typing

import numpy as np
from scipy.optimize import brentq

from ._types import ArrayLike, FloatArray, FloatOrArray
from .exceptions import ConsistencyError, DomainError, NoExtremum
from .potential import ChannelSpec, PotentialParams
from .utils import fermi_factor, logistic

logger = logging.getLogger(__name__)

SCAN_POINTS = 400
X_LOWER = -0.999
ROOT_XTOL = 1e-14
HYPERBOLIC_RTOL = 1e-8


class PekerisExpansion(typing.NamedTuple):
    """Encapsulates the Pekeris-approximated effective potential of one channel.

    Args:
        x_l: Location of the minimum in x, NaN when the barrier vanishes.
        r_l: Location of the minimum in fm.
        C0: Constant expansion coefficient.
        C1: Coefficient of s.
        C2: Coefficient of s².
        K0: Asymptotic value of the approximated potential in MeV.
        K1: Coefficient of -s in MeV.
        K2: Coefficient of s² in MeV.
        veff_min: Exact effective potential at r_l in MeV.
    """

    x_l: float
    r_l: float
    C0: float
    C1: float
    C2: float
    K0: float
    K1: float
    K2: float
    veff_min: float

    @classmethod
    def without_barrier(cls, p: PotentialParams) -> "PekerisExpansion":
        """The expansion of a channel with l̃(l̃+1) = 0, the bare Woods-Saxon well."""
        nan = float("nan")
        return cls(nan, nan, 0.0, 0.0, 0.0, 0.0, p.V0, 0.0, nan)

    @property
    def has_extremum(self) -> bool:
        return not math.isnan(self.x_l)

    @property
    def coefficients(self) -> typing.Tuple[float, float, float]:
        return self.C0, self.C1, self.C2

    @property
    def k(self) -> typing.Tuple[float, float, float]:
        return self.K0, self.K1, self.K2

    @property
    def left_asymptote(self) -> float:
        """Limit of the approximated potential deep inside the nucleus (s -> 1)."""
        return self.K0 - self.K1 + self.K2


def effective_potential_x(
    x: ArrayLike, p: PotentialParams, c: ChannelSpec
) -> FloatOrArray:
    """Exact effective potential as a function of x, in MeV."""
    x = np.asarray(x, dtype=float)
    value = -p.V0 * logistic(-p.alpha * x) + c.delta_tilde(p) / (1.0 + x) ** 2
    return float(value) if np.ndim(value) == 0 else value


def extremum_function(x: ArrayLike, p: PotentialParams, c: ChannelSpec) -> FloatOrArray:
    """Derivative of the effective potential in x; its zeros are the extrema."""
    x = np.asarray(x, dtype=float)
    s = logistic(p.alpha * x)
    value = p.alpha * p.V0 * s * (1.0 - s) - 2.0 * c.delta_tilde(p) / (1.0 + x) ** 3
    return float(value) if np.ndim(value) == 0 else value


def _extremum_slope(x: float, p: PotentialParams, c: ChannelSpec) -> float:
    s = float(logistic(p.alpha * x))
    return (
        p.alpha ** 2 * p.V0 * s * (1.0 - s) * (1.0 - 2.0 * s)
        + 6.0 * c.delta_tilde(p) / (1.0 + x) ** 4
    )


def _scan_grid(alpha: float) -> FloatArray:
    x_hi = 5.0 + 30.0 / alpha
    uniform = np.linspace(X_LOWER, x_hi, SCAN_POINTS)
    near_core = -1.0 + np.geomspace(1.0 + X_LOWER, 1.0 + x_hi, SCAN_POINTS)
    grid = np.unique(np.concatenate([uniform, near_core]))
    return grid[(grid >= X_LOWER) & (grid <= x_hi)]


def solve_extremum(p: PotentialParams, c: ChannelSpec) -> float:
    """Locates the minimum of the effective potential.

    Args:
        p: Potential parameters.
        c: Channel quantum numbers.

    Returns:
        x_l, or NaN when δ̃ = 0 and there is no barrier to expand.

    Raises:
        NoExtremum: If the effective potential has no interior minimum.
    """
    delta = c.delta_tilde(p)
    if delta == 0.0:
        return float("nan")

    grid = _scan_grid(p.alpha)
    values = np.asarray(extremum_function(grid, p, c))

    def f(x: float) -> float:
        return float(extremum_function(x, p, c))

    roots = []
    for i in range(len(grid) - 1):
        lo, hi, f_lo, f_hi = grid[i], grid[i + 1], values[i], values[i + 1]
        if f_lo == 0.0:
            roots.append(float(lo))
        elif f_lo * f_hi < 0.0:
            roots.append(float(brentq(f, lo, hi, xtol=ROOT_XTOL)))

    minima = [x for x in roots if _extremum_slope(x, p, c) > 0.0]
    logger.debug(
        "extremum scan for %s: %d sign changes, %d minima", c, len(roots), len(minima)
    )
    if not minima:
        raise NoExtremum(
            "Effective potential for l={} D={} has no interior minimum".format(c.l, c.D)
        )

    x_l = min(minima, key=lambda x: float(effective_potential_x(x, p, c)))
    scale = max(p.alpha * p.V0 / 4.0, 2.0 * abs(delta))
    residual = abs(f(x_l))
    if residual > 1e-12 * scale:
        logger.warning(
            "extremum residual %.3e exceeds %.3e for %s", residual, 1e-12 * scale, c
        )
    return x_l


def pekeris_coefficients(
    p: PotentialParams, c: ChannelSpec, x_l: float
) -> typing.Tuple[float, float, float]:
    """Closed-form expansion coefficients (C0, C1, C2) at x_l.

    Raises:
        DomainError: If x_l <= -1.
    """
    if not x_l > -1.0:
        raise DomainError("Expansion point must satisfy x_l > -1, got {}".format(x_l))
    alpha = p.alpha
    q = math.exp(alpha * x_l)
    qi = 1.0 / q
    s = 1.0 + q
    y = 1.0 + x_l
    lead = s ** 2 / (alpha * q * y ** 3)
    C0 = 1.0 / y ** 2 + lead * ((qi - 3.0) / s + 3.0 * qi / (alpha * y))
    C1 = 2.0 * lead * (2.0 - qi - 3.0 * (1.0 + qi) / (alpha * y))
    C2 = lead * s * (qi - 1.0 + 3.0 * (1.0 + qi) / (alpha * y))
    return C0, C1, C2


def k_coefficients_hyperbolic(
    p: PotentialParams, x_l: float
) -> typing.Tuple[float, float, float]:
    """(K0, K1, K2) with δ̃ eliminated through the extremum condition.

    Only meaningful when x_l is a root of the extremum equation.
    """
    alpha, V0 = p.alpha, p.V0
    ax = alpha * x_l
    y = 1.0 + x_l
    eq = math.exp(-ax)
    cosh2 = math.cosh(ax / 2.0) ** 2
    K0 = 0.5 * V0 * (
        alpha * y / (4.0 * cosh2)
        + (eq - 3.0) / (1.0 + math.exp(ax))
        + 3.0 * eq / (alpha * y)
    )
    K1 = V0 * (eq - 1.0 + 3.0 * (1.0 + eq) / (alpha * y))
    K2 = V0 * (6.0 * cosh2 / (alpha * y) - math.sinh(ax))
    return K0, K1, K2


def k_coefficients(
    p: PotentialParams,
    c: ChannelSpec,
    x_l: float,
    C0: float,
    C1: float,
    C2: float,
    check: bool = True,
) -> typing.Tuple[float, float, float]:
    """Returns (K0, K1, K2) = (δ̃C0, V0 - δ̃C1, δ̃C2).

    Args:
        check: Compare against the hyperbolic form, valid only at a true extremum.

    Raises:
        ConsistencyError: If the two forms disagree beyond 1e-8 relative.
    """
    delta = c.delta_tilde(p)
    K = (delta * C0, p.V0 - delta * C1, delta * C2)
    if check:
        hyperbolic = k_coefficients_hyperbolic(p, x_l)
        for name, value, other in zip(("K0", "K1", "K2"), K, hyperbolic):
            if abs(value - other) > HYPERBOLIC_RTOL * max(abs(value), p.V0):
                raise ConsistencyError(
                    "{} disagrees between coefficient and hyperbolic forms: "
                    "{!r} vs {!r}".format(name, value, other)
                )
    return K


def expand(p: PotentialParams, c: ChannelSpec) -> PekerisExpansion:
    """Builds the Pekeris expansion of a channel.

    Raises:
        NoExtremum: If the effective potential is monotone.
        ConsistencyError: If the coefficient cross-check fails.
    """
    if c.delta_tilde(p) == 0.0:
        return PekerisExpansion.without_barrier(p)
    x_l = solve_extremum(p, c)
    C0, C1, C2 = pekeris_coefficients(p, c, x_l)
    K0, K1, K2 = k_coefficients(p, c, x_l, C0, C1, C2)
    veff_min = float(effective_potential_x(x_l, p, c))
    logger.debug("expansion for %s: x_l=%r K=(%r, %r, %r)", c, x_l, K0, K1, K2)
    return PekerisExpansion(
        x_l=x_l,
        r_l=p.R0 * (1.0 + x_l),
        C0=C0,
        C1=C1,
        C2=C2,
        K0=K0,
        K1=K1,
        K2=K2,
        veff_min=veff_min,
    )


def approx_effective_potential(
    r: ArrayLike, px: PekerisExpansion, p: PotentialParams
) -> FloatOrArray:
    """K0 - K1 z + K2 z² with z = 1/(1 + e^((r - R0)/a)); total in r."""
    z = fermi_factor(r, p.R0, p.a)
    value = px.K0 - px.K1 * z + px.K2 * z * z
    return float(value) if np.ndim(value) == 0 else value


def centrifugal_derivatives(x: float) -> typing.Tuple[float, float, float]:
    """Value, first and second x-derivative of 1/(1+x)²."""
    y = 1.0 + x
    return 1.0 / y ** 2, -2.0 / y ** 3, 6.0 / y ** 4


def approx_centrifugal_derivatives(
    x: float, coefficients: typing.Sequence[float], alpha: float
) -> typing.Tuple[float, float, float]:
    """Value, first and second x-derivative of C0 + C1 s + C2 s²."""
    C0, C1, C2 = coefficients
    s = float(logistic(-alpha * x))
    ds = -alpha * s * (1.0 - s)
    d2s = alpha ** 2 * s * (1.0 - s) * (1.0 - 2.0 * s)
    value = C0 + C1 * s + C2 * s * s
    first = (C1 + 2.0 * C2 * s) * ds
    second = (C1 + 2.0 * C2 * s) * d2s + 2.0 * C2 * ds * ds
    return value, first, second


def system_residual(
    x_l: float, coefficients: typing.Sequence[float], alpha: float
) -> float:
    """Largest relative mismatch of the three matching conditions at x_l."""
    exact = centrifugal_derivatives(x_l)
    approx = approx_centrifugal_derivatives(x_l, coefficients, alpha)
    return max(abs(u - v) / abs(u) for u, v in zip(exact, approx))
