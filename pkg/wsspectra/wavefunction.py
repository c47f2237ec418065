"""Radial wavefunctions u(z) = C z^ε (1-z)^η P_nr^(2ε, 2η)(1 - 2z).

The variable z = 1/(1 + e^((r-R0)/a)) maps r in (-∞, ∞) onto (1, 0).
"""

import enum
import functools
import logging
import math
import typing

import numpy as np
from numpy.polynomial import Polynomial
from scipy.special import beta as beta_function, roots_jacobi

from ._types import ArrayLike, FloatOrArray
from .exceptions import DivergentIntegral, DomainError, ParameterError
from .nu import DimensionlessTriple
from .potential import ChannelSpec, PotentialParams
from .utils import Coordinate, Curve, fermi_factor, sign_changes

logger = logging.getLogger(__name__)

# Extent of the r-domain sampled for curves, in units of a beyond R0.
R_EXTENT = 20.0


class NormalizationMeasure(str, enum.Enum):
    """Which integral the normalization constant sets to one.

    ORTHOGONALITY weights u² by 1/(z(1-z)), which is ∫|u(r)|² dr after the change
    of variable. TABULATED integrates u² over z directly.
    """

    ORTHOGONALITY = "orthogonality"
    TABULATED = "tabulated"

    def exponents(self, epsilon: float, eta: float) -> typing.Tuple[float, float]:
        """Powers of z and (1 - z) multiplying P² in the integrand."""
        if self is NormalizationMeasure.ORTHOGONALITY:
            return 2.0 * epsilon - 1.0, 2.0 * eta - 1.0
        return 2.0 * epsilon, 2.0 * eta


def z_of_r(r: ArrayLike, p: PotentialParams) -> FloatOrArray:
    value = fermi_factor(r, p.R0, p.a)
    return float(value) if np.ndim(value) == 0 else value


def r_of_z(z: ArrayLike, p: PotentialParams) -> FloatOrArray:
    """Inverse of z_of_r on the open interval (0, 1)."""
    z = np.asarray(z, dtype=float)
    if np.any((z <= 0.0) | (z >= 1.0)):
        raise DomainError("r(z) is defined for 0 < z < 1")
    value = p.R0 + p.a * (np.log1p(-z) - np.log(z))
    return float(value) if np.ndim(value) == 0 else value


def z_coverage_gap(p: PotentialParams) -> float:
    """How far z(r=0) falls short of 1, the part of [0, 1] no radius r >= 0 reaches."""
    return 1.0 - float(z_of_r(0.0, p))


def _recurrence(n: int, alpha: float, beta: float, x: typing.Any) -> typing.Any:
    # Works for floats, arrays and numpy polynomials alike.
    prev = x * 0 + 1.0
    if n == 0:
        return prev
    current = (alpha + 1.0) + (alpha + beta + 2.0) * (x - 1.0) / 2.0
    ab = alpha + beta
    for k in range(2, n + 1):
        a_k = 2.0 * k * (k + ab) * (2.0 * k + ab - 2.0)
        b_k = (2.0 * k + ab - 1.0) * (
            (2.0 * k + ab) * (2.0 * k + ab - 2.0) * x + alpha ** 2 - beta ** 2
        )
        c_k = 2.0 * (k + alpha - 1.0) * (k + beta - 1.0) * (2.0 * k + ab)
        prev, current = current, (b_k * current - c_k * prev) / a_k
    return current


def jacobi_polynomial(n: int, alpha: float, beta: float, x: ArrayLike) -> FloatOrArray:
    """P_n^(alpha, beta)(x) by the three-term recurrence.

    Raises:
        ParameterError: If n < 0 or alpha, beta <= -1.
    """
    if n < 0:
        raise ParameterError("Polynomial degree must be non-negative, got {}".format(n))
    if alpha <= -1.0 or beta <= -1.0:
        raise ParameterError(
            "Jacobi parameters must exceed -1, got ({}, {})".format(alpha, beta)
        )
    value = _recurrence(n, alpha, beta, np.asarray(x, dtype=float))
    return float(value) if np.ndim(value) == 0 else value


@functools.lru_cache(maxsize=128)
def jacobi_z_coefficients(
    n: int, alpha: float, beta: float
) -> typing.Tuple[float, ...]:
    """Power-series coefficients in z of P_n^(alpha, beta)(1 - 2z), lowest first."""
    poly = _recurrence(n, alpha, beta, Polynomial([1.0, -2.0]))
    return tuple(float(c) for c in poly.coef)


def normalization_integral(
    epsilon: float, eta: float, nr: int, measure: NormalizationMeasure
) -> float:
    """∫₀¹ z^p (1-z)^q [P_nr(1 - 2z)]² dz, expanded termwise into Beta functions.

    Raises:
        DivergentIntegral: If epsilon or eta is not positive.
    """
    if not (epsilon > 0.0 and eta > 0.0):
        raise DivergentIntegral(
            "Normalization diverges for epsilon={!r} eta={!r}".format(epsilon, eta)
        )
    p, q = measure.exponents(epsilon, eta)
    coeffs = Polynomial(jacobi_z_coefficients(nr, 2.0 * epsilon, 2.0 * eta))
    squared = (coeffs * coeffs).coef
    k = np.arange(len(squared), dtype=float)
    return float(np.sum(squared * beta_function(p + k + 1.0, q + 1.0)))


class WavefunctionDescriptor(typing.NamedTuple):
    """A normalized radial wavefunction.

    Args:
        epsilon: Exponent of z.
        eta: Exponent of (1 - z).
        nr: Degree of the Jacobi polynomial.
        norm_const: Normalization constant C.
        a: Diffuseness in fm, the Jacobian of the z measure.
        measure: Which integral C normalizes.
    """

    epsilon: float
    eta: float
    nr: int
    norm_const: float
    a: float
    measure: NormalizationMeasure = NormalizationMeasure.ORTHOGONALITY

    @classmethod
    def from_triple(
        cls,
        p: PotentialParams,
        c: ChannelSpec,
        triple: DimensionlessTriple,
        measure: NormalizationMeasure = NormalizationMeasure.ORTHOGONALITY,
    ) -> "WavefunctionDescriptor":
        """Convenience class method building a normalized descriptor for a level.

        Raises:
            DivergentIntegral: If ε or η is not positive.
        """
        return cls(
            epsilon=triple.epsilon,
            eta=triple.eta,
            nr=c.nr,
            norm_const=normalize(p, c, triple, c.nr, measure),
            a=p.a,
            measure=measure,
        )

    @property
    def jacobi_parameters(self) -> typing.Tuple[float, float]:
        return 2.0 * self.epsilon, 2.0 * self.eta


def normalize(
    p: PotentialParams,
    c: ChannelSpec,
    triple: DimensionlessTriple,
    nr: typing.Optional[int] = None,
    measure: NormalizationMeasure = NormalizationMeasure.ORTHOGONALITY,
) -> float:
    """Returns the normalization constant C of level nr.

    Raises:
        DivergentIntegral: If ε or η is not positive.
    """
    nr = c.nr if nr is None else nr
    integral = normalization_integral(triple.epsilon, triple.eta, nr, measure)
    return 1.0 / math.sqrt(p.a * integral)


def evaluate(z: ArrayLike, w: WavefunctionDescriptor) -> FloatOrArray:
    """Returns u(z).

    Raises:
        DomainError: If any z lies outside [0, 1].
    """
    z = np.asarray(z, dtype=float)
    if np.any((z < 0.0) | (z > 1.0)):
        raise DomainError("Wavefunction is defined for 0 <= z <= 1")
    alpha, beta = w.jacobi_parameters
    value = (
        w.norm_const
        * np.power(z, w.epsilon)
        * np.power(1.0 - z, w.eta)
        * _recurrence(w.nr, alpha, beta, 1.0 - 2.0 * z)
    )
    return float(value) if np.ndim(value) == 0 else value


def normalization_residual(w: WavefunctionDescriptor) -> float:
    """a C² ∫ ... - 1 under the descriptor's own measure."""
    integral = normalization_integral(w.epsilon, w.eta, w.nr, w.measure)
    return w.a * w.norm_const ** 2 * integral - 1.0


def verify_normalization(
    w: WavefunctionDescriptor, points: typing.Optional[int] = None
) -> float:
    """Independent value of a C² ∫ ... by Gauss-Jacobi quadrature.

    The quadrature weight absorbs the endpoint powers of z and (1 - z), so the
    remaining integrand is the polynomial P², integrated exactly.
    """
    p, q = w.measure.exponents(w.epsilon, w.eta)
    if not (p > -1.0 and q > -1.0):
        raise DivergentIntegral(
            "Normalization diverges for epsilon={!r} eta={!r}".format(w.epsilon, w.eta)
        )
    points = points or w.nr + 8
    x, weights = roots_jacobi(points, p, q)
    alpha, beta = w.jacobi_parameters
    values = _recurrence(w.nr, alpha, beta, x)
    integral = 2.0 ** (-p - q - 1.0) * float(np.sum(weights * values * values))
    return w.a * w.norm_const ** 2 * integral


def sample_curve(
    w: WavefunctionDescriptor,
    n: int,
    coordinate: Coordinate = Coordinate.Z,
    p: typing.Optional[PotentialParams] = None,
) -> Curve:
    """Samples u uniformly in z over [0, 1] or in r over [0, R0 + 20a].

    Raises:
        ParameterError: If n < 2, or the r coordinate is requested without p.
    """
    if n < 2:
        raise ParameterError("A curve needs at least 2 samples, got {}".format(n))
    if coordinate is Coordinate.Z:
        x = np.linspace(0.0, 1.0, n)
        return Curve(coordinate, x, np.asarray(evaluate(x, w), dtype=float))
    if p is None:
        raise ParameterError("Sampling in r needs the potential parameters")
    r = np.linspace(0.0, p.R0 + R_EXTENT * p.a, n)
    return Curve(coordinate, r, np.asarray(evaluate(z_of_r(r, p), w), dtype=float))


def count_nodes(w: WavefunctionDescriptor, points: int = 10_000) -> int:
    """Sign changes of u on the open interval (0, 1)."""
    curve = sample_curve(w, points)
    return sign_changes(curve.y[1:-1])
