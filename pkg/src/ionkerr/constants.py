"""Physical constants (CODATA 2018) and reference ion masses.

Kept free of heavy imports so every layer can use it. All values SI.
"""

from dataclasses import dataclass
import math

__all__ = ["PhysicalConstants", "CODATA2018", "ION_MASSES_AMU"]


@dataclass(frozen=True)
class PhysicalConstants:
    """Fundamental constants used by the trap model.

    The Coulomb coupling appears both as q^2/(4 pi eps0) and, for a singly
    ionized atom, as alpha*hbar*c.  For consistent inputs these coincide;
    construction verifies the identity to 1e-9 relative.
    """

    hbar: float = 1.054_571_817e-34          # J s
    c: float = 2.997_924_58e8                # m/s
    alpha: float = 7.297_352_5693e-3         # fine-structure constant
    atomic_mass_unit: float = 1.660_539_066_60e-27  # kg
    elementary_charge: float = 1.602_176_634e-19    # C
    vacuum_permittivity: float = 8.854_187_8128e-12  # F/m

    def __post_init__(self):
        for name in ("hbar", "c", "alpha", "atomic_mass_unit",
                     "elementary_charge", "vacuum_permittivity"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be strictly positive")
        lhs = self.alpha * self.hbar * self.c
        rhs = self.elementary_charge**2 / (4 * math.pi * self.vacuum_permittivity)
        if abs(lhs - rhs) > 1e-9 * rhs:
            raise ValueError(
                "inconsistent constants: alpha*hbar*c differs from "
                f"e^2/(4 pi eps0) by {abs(lhs - rhs) / rhs:.3e} relative")

    @property
    def coulomb_energy_length(self) -> float:
        """q^2/(4 pi eps0) for a single elementary charge, in J*m."""
        return self.elementary_charge**2 / (4 * math.pi * self.vacuum_permittivity)


CODATA2018 = PhysicalConstants()

# Neutral atomic masses of common trapped-ion species, in amu.
ION_MASSES_AMU = {
    "Be-9": 9.012_183_06,
    "Mg-24": 23.985_041_697,
    "Ca-40": 39.962_590_9,
    "Ca-43": 42.958_766_44,
    "Sr-88": 87.905_612_5,
    "Ba-138": 137.905_247_2,
    "Yb-171": 170.936_330_2,
}
