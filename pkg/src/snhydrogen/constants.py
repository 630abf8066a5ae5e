"""Physical constants, coupling strengths and the internal unit system.

All numerical work is done in reduced-mass atomic units: lengths in the Bohr
radius of the two-body hydrogen problem (a0 = hbar^2 / (mu k_e e^2)) and
energies in the matching Hartree (hbar^2 / (mu a0^2)).  In these units the
Coulomb coupling k_e e^2 is exactly 1 Hartree*Bohr and hbar^2/(2 mu) is 1/2.
SI only appears at the input/output boundary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

__all__ = [
    "PhysicalConstants",
    "InteractionConfig",
    "CODATA2018",
    "KINETIC_COEFFICIENT",
    "coupling_alpha",
    "external_coupling",
    "gravity_to_coulomb_ratio",
    "energy_in_ev",
    "energy_in_hartree",
]

# hbar^2 / (2 mu) in internal units, exact by construction of the unit system.
KINETIC_COEFFICIENT = 0.5


@dataclass(frozen=True)
class PhysicalConstants:
    """Base SI constants; derived quantities are computed on access."""

    # Newtonian constant of gravitation (m^3 kg^-1 s^-2)
    G: float = 6.67430e-11
    # reduced Planck constant (J s)
    hbar: float = 1.054571817e-34
    # electron mass (kg)
    m_e: float = 9.1093837015e-31
    # proton mass (kg)
    m_p: float = 1.67262192369e-27
    # elementary charge (C), also J per eV
    e: float = 1.602176634e-19
    # vacuum electric permittivity (F/m)
    epsilon_0: float = 8.8541878128e-12
    # speed of light (m/s)
    c: float = 299792458.0

    @property
    def ke_e2(self) -> float:
        """Coulomb constant times e^2 (J m)."""
        return self.e**2 / (4.0 * math.pi * self.epsilon_0)

    @property
    def mu(self) -> float:
        """Electron-proton reduced mass (kg)."""
        return self.m_e * self.m_p / (self.m_e + self.m_p)

    @property
    def bohr_radius(self) -> float:
        """Reduced-mass Bohr radius (m)."""
        return self.hbar**2 / (self.mu * self.ke_e2)

    @property
    def hartree(self) -> float:
        """Reduced-mass Hartree energy (J)."""
        return self.hbar**2 / (self.mu * self.bohr_radius**2)

    @property
    def ev_per_hartree(self) -> float:
        return self.hartree / self.e

    @property
    def planck_mass(self) -> float:
        """sqrt(hbar c / G) in kg."""
        return math.sqrt(self.hbar * self.c / self.G)

    @property
    def planck_length(self) -> float:
        """sqrt(hbar G / c^3) in m."""
        return math.sqrt(self.hbar * self.G / self.c**3)

    def amplified_gravity(self, factor: float) -> "PhysicalConstants":
        """Copy with G scaled by ``factor``.

        Only meant for exercising the attractive self-interaction branch,
        which is invisible in double precision at the physical G.
        """
        return replace(self, G=self.G * factor)

    def as_dict(self) -> dict[str, float]:
        return {
            "G": self.G,
            "hbar": self.hbar,
            "m_e": self.m_e,
            "m_p": self.m_p,
            "e": self.e,
            "epsilon_0": self.epsilon_0,
            "c": self.c,
            "ke_e2": self.ke_e2,
            "mu": self.mu,
            "bohr_radius": self.bohr_radius,
            "hartree": self.hartree,
            "ev_per_hartree": self.ev_per_hartree,
        }


CODATA2018 = PhysicalConstants()


@dataclass(frozen=True)
class InteractionConfig:
    """Which interaction terms enter the radial equation.

    The Coulomb attraction to the proton is always present.
    """

    electric_self: bool = True
    gravitational_self: bool = True
    gravitational_external: bool = True

    @classmethod
    def from_mode(cls, mode: str, gravitational_external: bool = True) -> "InteractionConfig":
        """Build from a CLI-style mode: none, electric, gravitational or both."""
        modes = {
            "none": (False, False),
            "electric": (True, False),
            "gravitational": (False, True),
            "both": (True, True),
        }
        try:
            electric, gravitational = modes[mode]
        except KeyError:
            raise ValueError(
                f"self-interaction mode must be one of {sorted(modes)}, got {mode!r}"
            ) from None
        return cls(electric, gravitational, gravitational_external)

    @property
    def mode(self) -> str:
        if self.electric_self and self.gravitational_self:
            return "both"
        if self.electric_self:
            return "electric"
        if self.gravitational_self:
            return "gravitational"
        return "none"

    @property
    def any_self(self) -> bool:
        return self.electric_self or self.gravitational_self


def gravity_to_coulomb_ratio(constants: PhysicalConstants = CODATA2018) -> float:
    """G m_e m_p / (k_e e^2), about 4.4e-40 for the physical constants."""
    return constants.G * constants.m_e * constants.m_p / constants.ke_e2


def coupling_alpha(
    constants: PhysicalConstants = CODATA2018,
    cfg: InteractionConfig = InteractionConfig(),
) -> float:
    """Self-interaction coupling in Hartree*Bohr.

    Electric part k_e e^2 (repulsive) plus gravitational part -G m_e m_p
    (attractive).  The gravitational self-term uses the electron-proton mass
    product rather than m_e^2, as in the original formulation.
    """
    alpha_si = 0.0
    if cfg.electric_self:
        alpha_si += constants.ke_e2
    if cfg.gravitational_self:
        alpha_si -= constants.G * constants.m_e * constants.m_p
    return alpha_si / constants.ke_e2


def external_coupling(
    constants: PhysicalConstants = CODATA2018,
    cfg: InteractionConfig = InteractionConfig(),
) -> float:
    """Strength C of the attractive -C/r nuclear potential, in Hartree*Bohr."""
    c_si = constants.ke_e2
    if cfg.gravitational_external:
        c_si += constants.G * constants.m_e * constants.m_p
    return c_si / constants.ke_e2


def energy_in_ev(energy_hartree, constants: PhysicalConstants = CODATA2018):
    return energy_hartree * constants.ev_per_hartree


def energy_in_hartree(energy_ev, constants: PhysicalConstants = CODATA2018):
    return energy_ev / constants.ev_per_hartree
