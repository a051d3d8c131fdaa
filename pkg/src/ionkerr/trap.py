"""Trap model for two identical ions in a linear harmonic trap.

Derives the relative-motion mode data (rocking and stretch frequencies,
equilibrium half-separation, anharmonicity scale) from the primary inputs:
ion species and the transverse/axial trap frequencies.

Conventions: external surfaces take linear frequencies nu in Hz and masses
in amu; everything internal is angular (rad/s) and SI.  The relative
coordinates are half-differences, so ``z0`` is half the ion spacing.
"""

from dataclasses import dataclass
import math

from .constants import CODATA2018, ION_MASSES_AMU, PhysicalConstants

__all__ = [
    "DegenerateTrap",
    "IonSpecies",
    "TrapConfig",
    "ModeSpectrum",
    "derive_spectrum",
    "dimensionless_params",
]

SQRT3 = math.sqrt(3.0)


class DegenerateTrap(ValueError):
    """Transverse confinement not stronger than axial: the two-ion string
    does not align on the z axis and the model does not apply."""


@dataclass(frozen=True)
class IonSpecies:
    """One of the two (identical) ions: mass in kg, charge in units of e."""

    mass: float
    charge_multiple: int = 1

    def __post_init__(self):
        if self.mass <= 0:
            raise ValueError("ion mass must be positive")
        if self.charge_multiple < 1 or int(self.charge_multiple) != self.charge_multiple:
            raise ValueError("charge_multiple must be a positive integer")

    @classmethod
    def from_amu(cls, mass_amu: float, charge_multiple: int = 1,
                 consts: PhysicalConstants = CODATA2018) -> "IonSpecies":
        return cls(mass=mass_amu * consts.atomic_mass_unit,
                   charge_multiple=charge_multiple)

    @classmethod
    def from_name(cls, name: str, charge_multiple: int = 1,
                  consts: PhysicalConstants = CODATA2018) -> "IonSpecies":
        try:
            mass_amu = ION_MASSES_AMU[name]
        except KeyError:
            known = ", ".join(sorted(ION_MASSES_AMU))
            raise ValueError(f"unknown species {name!r}; known: {known}") from None
        return cls.from_amu(mass_amu, charge_multiple, consts)


@dataclass(frozen=True)
class TrapConfig:
    """Angular trap frequencies: omega_perp (both transverse axes) and
    omega_z (axial).  Requires omega_perp > omega_z."""

    omega_perp: float
    omega_z: float

    def __post_init__(self):
        if self.omega_z <= 0:
            raise ValueError("omega_z must be positive")
        if self.omega_perp <= self.omega_z:
            raise DegenerateTrap(
                f"omega_perp ({self.omega_perp:.6g}) must exceed omega_z "
                f"({self.omega_z:.6g}); weaker transverse confinement leaves "
                "the axial ion string unstable")

    @classmethod
    def from_linear(cls, nu_perp_hz: float, nu_z_hz: float) -> "TrapConfig":
        """Build from linear frequencies in Hz (the experimentalist's units)."""
        return cls(omega_perp=2 * math.pi * nu_perp_hz,
                   omega_z=2 * math.pi * nu_z_hz)


@dataclass(frozen=True)
class ModeSpectrum:
    """Derived relative-motion quantities.

    omega_r : rocking-mode angular frequency sqrt(omega_perp^2 - omega_z^2)
    omega_s : stretch-mode angular frequency sqrt(3)*omega_z
    z0      : equilibrium half-separation of the ions [m]
    xi      : dimensionless anharmonicity scale (2 hbar omega_z / Z^4 alpha^2 m c^2)^(1/3)
    zeta    : cubic coupling energy sqrt(xi hbar^2 omega_s^3 omega_z / 32 omega_r^2) [J]
    ratio_r : omega_perp / omega_z
    """

    omega_r: float
    omega_s: float
    z0: float
    xi: float
    zeta: float
    ratio_r: float

    @property
    def omega_z(self) -> float:
        return self.omega_s / SQRT3


def derive_spectrum(species: IonSpecies, trap: TrapConfig,
                    consts: PhysicalConstants = CODATA2018) -> ModeSpectrum:
    """Derive all secondary quantities from the physical inputs.

    The Coulomb strength is q^2/(4 pi eps0) with q = Z e, which for Z = 1
    equals alpha*hbar*c.  z0 solves the equilibrium condition of the
    relative motion; the effective mass of the relative coordinate is 2m
    and is already folded into the formulas.
    """
    m = species.mass
    wz = trap.omega_z
    wperp = trap.omega_perp
    if wperp <= wz:
        raise DegenerateTrap("omega_perp must exceed omega_z")

    z4 = float(species.charge_multiple) ** 4
    coulomb = species.charge_multiple**2 * consts.coulomb_energy_length  # q^2/4 pi eps0
    omega_r = math.sqrt(wperp**2 - wz**2)
    omega_s = SQRT3 * wz
    z0 = (coulomb / (4 * m * wz**2)) ** (1.0 / 3.0)
    xi = (2 * consts.hbar * wz / (z4 * consts.alpha**2 * m * consts.c**2)) ** (1.0 / 3.0)
    zeta = math.sqrt(xi * consts.hbar**2 * omega_s**3 * wz / (32 * omega_r**2))
    return ModeSpectrum(omega_r=omega_r, omega_s=omega_s, z0=z0, xi=xi,
                        zeta=zeta, ratio_r=wperp / wz)


def dimensionless_params(spectrum: ModeSpectrum) -> tuple[float, float]:
    """Reduce a spectrum to the pair (r, xi) that fixes all mode physics.

    Downstream modules work in units hbar = omega_z = 1, where the stretch
    frequency is sqrt(3), the rocking frequency is sqrt(r^2 - 1) and the
    cubic coupling is sqrt(xi * 3*sqrt(3) / (32*(r^2 - 1))).
    """
    return spectrum.ratio_r, spectrum.xi
