"""Single working point: two Ca-40 ions at nu_z = 1 MHz, nu_perp = 5 MHz.

Walks from the raw trap inputs to the cross-Kerr coefficient: derived mode
frequencies, equilibrium spacing, the anharmonicity scale xi, and chi/2pi
from the corrected closed form next to the earlier published variant.
"""

import math

from ionkerr import (IonSpecies, TrapConfig, chi_paper, chi_roos,
                     delta_omega_s, derive_spectrum, dimensionless_params)

species = IonSpecies.from_name("Ca-40")
trap = TrapConfig.from_linear(nu_perp_hz=5.0e6, nu_z_hz=1.0e6)
spectrum = derive_spectrum(species, trap)

print("two Ca-40 ions, nu_z = 1 MHz, nu_perp = 5 MHz")
print(f"  rocking mode   omega_r/2pi = {spectrum.omega_r / 2 / math.pi / 1e6:.6f} MHz")
print(f"  stretch mode   omega_s/2pi = {spectrum.omega_s / 2 / math.pi / 1e6:.6f} MHz")
print(f"  half-spacing   z0 = {spectrum.z0 * 1e6:.4f} um")
print(f"  anharmonicity  xi = {spectrum.xi:.4e}   (order 1e-5 for atomic ions)")

r, xi = dimensionless_params(spectrum)
print(f"  dimensionless  r = {r:.3f}, rocking/axial detuning 4w_r^2-w_s^2 = "
      f"{4 * (r**2 - 1) - 3:.1f} (in omega_z^2)")

corrected = chi_paper(spectrum, species, trap)
earlier = chi_roos(spectrum, species, trap)
print()
print(f"chi/2pi corrected formula : {corrected.chi_over_2pi:+.4f} Hz")
print(f"chi/2pi earlier formula   : {earlier.chi_over_2pi:+.4f} Hz")
print(f"ratio                     : {earlier.chi / corrected.chi:.5f} "
      "(-> 2 far off resonance)")

# per-phonon frequency pull of the stretch mode
shift0 = delta_omega_s(0, 0, spectrum) / (2 * math.pi)
shift1 = delta_omega_s(1, 0, spectrum) / (2 * math.pi)
print()
print("stretch-mode frequency pull (cross part only):")
print(f"  zero rocking phonons : {shift0:+.4f} Hz")
print(f"  one rocking phonon   : {shift1:+.4f} Hz")
print(f"  difference           : {shift1 - shift0:+.4f} Hz  = chi/2pi")
