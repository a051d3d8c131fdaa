"""chi versus axial trap frequency, as plot-ready CSV.

Evaluates both formula variants for Ca-40 over a grid of axial
frequencies at fixed transverse confinement and writes
sweep_chi_ca40.csv next to this script.  The magnitude grows with nu_z:
every factor (xi, omega_s, the bracket) increases as the resonance locus
is approached from above.
"""

import csv
import pathlib

from ionkerr import IonSpecies, sweep_chi

species = IonSpecies.from_name("Ca-40")
nu_perp = 5.0e6
grid = [0.5e6 + 0.125e6 * i for i in range(17)]  # 0.5 .. 2.5 MHz

rows = sweep_chi(species, nu_perp, grid, formula="both")

out_path = pathlib.Path(__file__).with_name("sweep_chi_ca40.csv")
with out_path.open("w", newline="") as fh:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(["nu_z_hz", "chi_paper_hz", "chi_roos_hz", "error"])
    for row in rows:
        writer.writerow([f"{row.nu_z_hz:.8e}",
                         "" if row.chi_paper_hz is None else f"{row.chi_paper_hz:.8e}",
                         "" if row.chi_roos_hz is None else f"{row.chi_roos_hz:.8e}",
                         row.error or ""])

print(f"wrote {out_path.name}")
print(f"{'nu_z [MHz]':>10}  {'chi/2pi corrected [Hz]':>22}  {'earlier [Hz]':>13}")
for row in rows[::4]:
    print(f"{row.nu_z_hz / 1e6:10.3f}  {row.chi_paper_hz:22.4f}  "
          f"{row.chi_roos_hz:13.4f}")
