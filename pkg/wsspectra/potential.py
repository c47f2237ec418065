"""Woods-Saxon potential, centrifugal barrier and the D-dimensional channel bookkeeping.

All energies are in MeV, lengths in fm and masses in atomic mass units.
"""

import typing
import warnings

import numpy as np

from ._types import ArrayLike, FloatOrArray
from .exceptions import DomainError, ParameterError, WSSpectraWarning
from .utils import Coordinate, Curve, fermi_factor

HBAR_C = 197.3269804  # MeV fm, CODATA 2018
AMU_C2 = 931.49410242  # MeV, CODATA 2018
NEUTRON_MASS = 1.00866  # u

# Diffuseness-to-radius ratio above which the a << R0 premise is flagged.
DIFFUSENESS_ADVISORY_RATIO = 0.3


class PhysicalConstants(typing.NamedTuple):
    """Conversion constants between the public units.

    Args:
        hbar_c: Reduced Planck constant times c, in MeV fm.
        amu_c2: Atomic mass unit energy equivalent, in MeV.
    """

    hbar_c: float = HBAR_C
    amu_c2: float = AMU_C2

    @classmethod
    def codata_2018(cls) -> "PhysicalConstants":
        return cls()

    @classmethod
    def tabulated(cls) -> "PhysicalConstants":
        """Constants that reproduce the published ⁵⁶Fe single-particle tables.

        The mass unit is the one whose ħ²/2μ lands the tabulated extremum radii
        on the printed digits; ħc is unchanged.
        """
        return cls(hbar_c=HBAR_C, amu_c2=929.923)

    def check(self) -> None:
        """Raises:
        ParameterError: If either constant is not strictly positive.
        """
        if not (self.hbar_c > 0 and self.amu_c2 > 0):
            raise ParameterError(
                "Physical constants must be positive, got hbar_c={!r} "
                "amu_c2={!r}".format(self.hbar_c, self.amu_c2)
            )

    def hbar2_over_2mu(self, mu: float) -> float:
        """Returns ħ²/2μ in MeV fm² for a reduced mass given in u."""
        return self.hbar_c ** 2 / (2.0 * mu * self.amu_c2)


CODATA_2018 = PhysicalConstants.codata_2018()
TABULATED = PhysicalConstants.tabulated()


class PotentialParams(typing.NamedTuple):
    """Encapsulates the Woods-Saxon well and the particle bound in it.

    Args:
        V0: Depth in MeV.
        R0: Radius in fm.
        a: Surface diffuseness in fm.
        mu: Reduced mass in u.
        constants: Unit conversion constants.
    """

    V0: float
    R0: float
    a: float
    mu: float
    constants: PhysicalConstants = CODATA_2018

    @classmethod
    def create(
        cls,
        V0: float,
        R0: float,
        a: float,
        mu: float,
        constants: PhysicalConstants = CODATA_2018,
    ) -> "PotentialParams":
        """Validating constructor.

        Returns:
            A PotentialParams instance.

        Raises:
            ParameterError: If any input is not strictly positive.
        """
        for name, value in (("V0", V0), ("R0", R0), ("a", a), ("mu", mu)):
            if not (np.isfinite(value) and value > 0):
                raise ParameterError(
                    "{} must be a positive number, got {!r}".format(name, value)
                )
        constants.check()
        if a / R0 > DIFFUSENESS_ADVISORY_RATIO:
            warnings.warn(
                "Diffuseness a={} fm is not small against R0={} fm; the Pekeris "
                "expansion assumes a << R0".format(a, R0),
                WSSpectraWarning,
                stacklevel=2,
            )
        return cls(
            V0=float(V0), R0=float(R0), a=float(a), mu=float(mu), constants=constants
        )

    @classmethod
    def from_mass_number(
        cls,
        A: int,
        r0: float = 1.285,
        a: float = 0.65,
        neutron_mass: float = NEUTRON_MASS,
        constants: PhysicalConstants = CODATA_2018,
    ) -> "PotentialParams":
        """Convenience class method for a neutron bound to a core of mass number A.

        Uses V0 = 40.5 + 0.13 A MeV, R0 = r0 A^(1/3) and the neutron-core
        reduced mass with the core mass taken as A u.

        Raises:
            ParameterError: If A is not a positive integer.
        """
        if isinstance(A, bool) or int(A) != A or A < 1:
            raise ParameterError(
                "Mass number must be a positive integer, got {!r}".format(A)
            )
        core_mass = float(A)
        return cls.create(
            V0=40.5 + 0.13 * A,
            R0=r0 * A ** (1.0 / 3.0),
            a=a,
            mu=core_mass * neutron_mass / (core_mass + neutron_mass),
            constants=constants,
        )

    @property
    def alpha(self) -> float:
        return self.R0 / self.a

    @property
    def hbar2_over_2mu(self) -> float:
        return self.constants.hbar2_over_2mu(self.mu)

    @property
    def energy_scale(self) -> float:
        """ħ²/(2μa²), the unit the dimensionless spectrum parameters are measured in."""
        return self.hbar2_over_2mu / self.a ** 2


class ChannelSpec(typing.NamedTuple):
    """Quantum numbers of one radial channel.

    Args:
        nr: Radial quantum number.
        l: Orbital quantum number.
        D: Number of spatial dimensions.
    """

    nr: int
    l: int  # noqa: E741
    D: int = 3

    @classmethod
    def create(cls, nr: int, l: int, D: int = 3) -> "ChannelSpec":  # noqa: E741
        """Raises:
        ParameterError: If nr < 0, l < 0 or D < 2.
        """
        if nr < 0 or l < 0 or D < 2:
            raise ParameterError(
                "Invalid channel nr={} l={} D={}; need nr >= 0, l >= 0 and "
                "D >= 2".format(nr, l, D)
            )
        return cls(nr=int(nr), l=int(l), D=int(D))

    @property
    def l_tilde(self) -> float:
        return self.l + (self.D - 3) / 2.0

    @property
    def centrifugal_factor(self) -> float:
        """l̃(l̃+1); negative only for D = 2, l = 0."""
        lt = self.l_tilde
        return lt * (lt + 1.0)

    def delta_tilde(self, p: PotentialParams) -> float:
        """Centrifugal strength at the nuclear radius, ħ²l̃(l̃+1)/(2μR0²) in MeV."""
        return p.hbar2_over_2mu * self.centrifugal_factor / p.R0 ** 2

    def with_nr(self, nr: int) -> "ChannelSpec":
        return self._replace(nr=nr)


def equivalent_channels(
    c: ChannelSpec, dimensions: typing.Iterable[int]
) -> typing.List[ChannelSpec]:
    """Channels in other dimensions with the same l̃, hence the same spectrum."""
    found = []
    for D in dimensions:
        twice_l = 2 * c.l + c.D - D
        if D >= 2 and twice_l >= 0 and twice_l % 2 == 0:
            found.append(ChannelSpec(nr=c.nr, l=twice_l // 2, D=D))
    return found


def woods_saxon(r: ArrayLike, p: PotentialParams) -> FloatOrArray:
    """Returns -V0 / (1 + e^((r - R0) / a)).

    Raises:
        DomainError: If any r is negative.
    """
    r = np.asarray(r, dtype=float)
    if np.any(r < 0):
        raise DomainError("Woods-Saxon potential is defined for r >= 0")
    value = -p.V0 * fermi_factor(r, p.R0, p.a)
    return float(value) if np.ndim(value) == 0 else value


def centrifugal_term(r: ArrayLike, p: PotentialParams, c: ChannelSpec) -> FloatOrArray:
    """Returns ħ²l̃(l̃+1)/(2μr²).

    Raises:
        DomainError: If r = 0 meets a non-vanishing l̃(l̃+1), or r < 0.
    """
    r = np.asarray(r, dtype=float)
    factor = c.centrifugal_factor
    if np.any(r < 0):
        raise DomainError("Radial coordinate must be non-negative")
    if factor == 0.0:
        value = np.zeros_like(r)
    else:
        if np.any(r == 0):
            raise DomainError(
                "Centrifugal term is singular at r = 0 for l~(l~+1) = {}".format(factor)
            )
        value = p.hbar2_over_2mu * factor / r ** 2
    return float(value) if np.ndim(value) == 0 else value


def effective_potential(
    r: ArrayLike, p: PotentialParams, c: ChannelSpec
) -> FloatOrArray:
    """Woods-Saxon potential plus the D-dimensional centrifugal barrier.

    Raises:
        DomainError: At r = 0 for channels with a centrifugal singularity.
    """
    return woods_saxon(r, p) + centrifugal_term(r, p, c)


def potential_curve(
    p: PotentialParams, c: ChannelSpec, r_min: float, r_max: float, n: int
) -> Curve:
    """Samples the effective potential at n uniformly spaced radii.

    Returns:
        A curve in the r coordinate including both endpoints exactly.

    Raises:
        ParameterError: If the range is not 0 < r_min < r_max or n < 2.
    """
    if not 0 < r_min < r_max:
        raise ParameterError(
            "Invalid radial range [{}, {}], need 0 < r_min < r_max".format(r_min, r_max)
        )
    if n < 2:
        raise ParameterError("A curve needs at least 2 samples, got {}".format(n))
    r = np.linspace(r_min, r_max, n)
    r[0], r[-1] = r_min, r_max
    return Curve(Coordinate.R, r, np.asarray(effective_potential(r, p, c), dtype=float))
