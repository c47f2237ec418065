"""Supersymmetric route to the same spectrum.

The superpotential W(r) = -(ħ/√2μ)(A + B z) factorizes the Pekeris-approximated
Hamiltonian. Shifting B by 1/a maps the partner potential onto the original shape,
so every excited level follows from the ground state through a finite recursion.
"""

import logging
import math
import typing

import numpy as np

from ._types import ArrayLike, FloatOrArray
from .exceptions import ConsistencyError, FormulaInvalid
from .nu import spectrum_parameters
from .pekeris import PekerisExpansion, approx_effective_potential
from .potential import ChannelSpec, PotentialParams
from .utils import fermi_factor

logger = logging.getLogger(__name__)

TELESCOPING_RTOL = 1e-10


class SuperpotentialParams(typing.NamedTuple):
    """Superpotential coefficients and the context needed to evaluate W(r).

    Args:
        A: Asymptotic coefficient, fm⁻¹.
        B: Coefficient of z, fm⁻¹.
        beta_sq: β² of the channel.
        gamma_sq: γ² of the channel.
        K0: Asymptotic value of the approximated potential, MeV.
        R0: Well radius, fm.
        a: Diffuseness, fm.
        hbar2_over_2mu: ħ²/2μ, MeV fm².
    """

    A: float
    B: float
    beta_sq: float
    gamma_sq: float
    K0: float
    R0: float
    a: float
    hbar2_over_2mu: float

    @property
    def a_negative(self) -> bool:
        return self.A < 0.0

    @property
    def b_positive(self) -> bool:
        return self.B > 0.0

    @property
    def ground_state_admissible(self) -> bool:
        """Both boundary conditions of the ground state hold, A < 0 and B > 0."""
        return self.a_negative and self.b_positive

    @property
    def ground_energy(self) -> float:
        return self.K0 - self.hbar2_over_2mu * self.A ** 2

    def asymptote(self, B: float) -> float:
        """A as a function of B, (γ² - β²)/(2a²B) - B/2."""
        return (self.gamma_sq - self.beta_sq) / (2.0 * self.a ** 2 * B) - B / 2.0

    def shifted(self, steps: int) -> "SuperpotentialParams":
        """Parameters of the family member with B lowered by steps/a.

        Raises:
            FormulaInvalid: If the shifted B vanishes.
        """
        B = self.B - steps / self.a
        if B == 0.0:
            raise FormulaInvalid("Shifted B vanishes after {} steps".format(steps))
        return self._replace(A=self.asymptote(B), B=B)


def superpotential_params(
    p: PotentialParams, c: ChannelSpec, px: PekerisExpansion
) -> SuperpotentialParams:
    """Solves the Riccati constraints for A and B.

    Raises:
        FormulaInvalid: If 1 + 4γ² < 0 or γ² = 0, where A is undefined.
    """
    beta_sq, gamma_sq = spectrum_parameters(p, px)
    radicand = 1.0 + 4.0 * gamma_sq
    if radicand < 0.0:
        raise FormulaInvalid("1 + 4 gamma^2 = {} is negative".format(radicand))
    root = math.sqrt(radicand)
    if root == 1.0:
        raise FormulaInvalid("Superpotential is degenerate at gamma^2 = 0")
    a = p.a
    return SuperpotentialParams(
        A=1.0 / (2.0 * a) - beta_sq / (a * (root - 1.0)),
        B=(root - 1.0) / (2.0 * a),
        beta_sq=beta_sq,
        gamma_sq=gamma_sq,
        K0=px.K0,
        R0=p.R0,
        a=a,
        hbar2_over_2mu=p.hbar2_over_2mu,
    )


def constraint_residuals(sp: SuperpotentialParams) -> typing.Tuple[float, float]:
    """Residuals of 2AB - B/a = -β²/a² and B² + B/a = γ²/a², in fm⁻²."""
    a2 = sp.a ** 2
    return (
        2.0 * sp.A * sp.B - sp.B / sp.a + sp.beta_sq / a2,
        sp.B ** 2 + sp.B / sp.a - sp.gamma_sq / a2,
    )


def susy_ground_energy(
    p: PotentialParams, c: ChannelSpec, px: PekerisExpansion
) -> float:
    """E0 = K0 - (ħ²/2μ)A²."""
    return superpotential_params(p, c, px).ground_energy


def shape_invariance_remainder(i: int, sp: SuperpotentialParams) -> float:
    """R(B_i), the constant separating consecutive partner potentials, in MeV."""
    current = sp.asymptote(sp.B - i / sp.a)
    previous = sp.asymptote(sp.B - (i - 1) / sp.a)
    return -sp.hbar2_over_2mu * (current ** 2 - previous ** 2)


def susy_energy_closed_form(sp: SuperpotentialParams, nr: int) -> float:
    S = 2.0 * sp.a * sp.B - 2.0 * nr
    bracket = (sp.beta_sq - sp.gamma_sq) / S + S / 4.0
    return sp.K0 - sp.hbar2_over_2mu / sp.a ** 2 * bracket ** 2


def susy_energy_telescoped(sp: SuperpotentialParams, nr: int) -> float:
    energy = sp.ground_energy
    for i in range(1, nr + 1):
        energy += shape_invariance_remainder(i, sp)
    return energy


def max_recursion_nr(sp: SuperpotentialParams) -> int:
    """Largest nr for which B - nr/a stays positive, or -1."""
    if sp.B <= 0.0:
        return -1
    return int(math.ceil(sp.a * sp.B)) - 1


def susy_energy(
    p: PotentialParams, c: ChannelSpec, px: PekerisExpansion, nr: int
) -> float:
    """Energy of level nr from the shape-invariance recursion.

    Raises:
        FormulaInvalid: If B - nr/a <= 0, where the recursion stops.
        ConsistencyError: If the telescoped sum and closed form disagree.
    """
    sp = superpotential_params(p, c, px)
    if not sp.B - nr / sp.a > 0.0:
        raise FormulaInvalid(
            "Recursion invalid: B - nr/a = {} for nr = {}".format(sp.B - nr / sp.a, nr)
        )
    closed = susy_energy_closed_form(sp, nr)
    telescoped = susy_energy_telescoped(sp, nr)
    floor = max(1.0, abs(closed), abs(sp.K0))
    if abs(closed - telescoped) > TELESCOPING_RTOL * floor:
        raise ConsistencyError(
            "Shape-invariance sum {!r} disagrees with closed form {!r}".format(
                telescoped, closed
            )
        )
    return closed


def susy_levels(
    p: PotentialParams, c: ChannelSpec, px: PekerisExpansion
) -> typing.List[float]:
    """Every level the recursion reaches, starting from the ground state."""
    sp = superpotential_params(p, c, px)
    return [susy_energy(p, c, px, nr) for nr in range(max_recursion_nr(sp) + 1)]


def superpotential(r: ArrayLike, sp: SuperpotentialParams) -> FloatOrArray:
    """W(r) in √MeV."""
    z = fermi_factor(r, sp.R0, sp.a)
    return -math.sqrt(sp.hbar2_over_2mu) * (sp.A + sp.B * z)


def superpotential_derivative(r: ArrayLike, sp: SuperpotentialParams) -> FloatOrArray:
    """dW/dr in √MeV/fm."""
    z = fermi_factor(r, sp.R0, sp.a)
    return math.sqrt(sp.hbar2_over_2mu) * sp.B * z * (1.0 - z) / sp.a


def partner_potentials(
    r: ArrayLike, sp: SuperpotentialParams
) -> typing.Tuple[FloatOrArray, FloatOrArray]:
    """(V1, V2) = W² ∓ (ħ/√2μ)W' measured from the ground-state energy, in MeV."""
    z = fermi_factor(r, sp.R0, sp.a)
    A, B, a = sp.A, sp.B, sp.a
    c = sp.hbar2_over_2mu
    V1 = c * (A ** 2 + (2 * A * B - B / a) * z + (B ** 2 + B / a) * z ** 2)
    V2 = c * (A ** 2 + (2 * A * B + B / a) * z + (B ** 2 - B / a) * z ** 2)
    return V1, V2


def riccati_residual(
    r: ArrayLike, sp: SuperpotentialParams, px: PekerisExpansion, p: PotentialParams
) -> FloatOrArray:
    """W² - (ħ/√2μ)W' + E0 - Ṽ_eff, identically zero for a consistent factorization."""
    W = superpotential(r, sp)
    dW = superpotential_derivative(r, sp)
    return (
        W * W
        - math.sqrt(sp.hbar2_over_2mu) * dW
        + sp.ground_energy
        - approx_effective_potential(r, px, p)
    )


def susy_ground_wavefunction(r: ArrayLike, sp: SuperpotentialParams) -> FloatOrArray:
    """Unnormalized ground state e^(A(r-R0)) (1 + e^(-(r-R0)/a))^(-aB)."""
    t = np.asarray(r, dtype=float) - sp.R0
    log_u = sp.A * t - sp.a * sp.B * np.logaddexp(0.0, -t / sp.a)
    value = np.exp(log_u)
    return float(value) if np.ndim(value) == 0 else value
