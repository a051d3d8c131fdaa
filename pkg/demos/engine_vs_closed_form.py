"""The perturbation engine rederives the closed-form coefficient.

The engine knows nothing about the final formula: it normal-orders the
cubic and quartic couplings, applies them to number states, and sums the
standard second-order series.  The second difference over the four-state
stencil then has to reproduce the closed form at machine precision, for
any trap ratio.

Also prints the cubic-coupling channel table out of |2,1,3> -- the
occupation factors of two published rows disagree with the ladder algebra
(rows 5 and 10), which the engine makes visible.
"""

from ionkerr import (FockState, chi_over_omega_z, cubic_channels,
                     cubic_coupling, kerr_coefficient_pt, published_element)
from ionkerr.perturbation import ROW_DELTAS

XI = 1e-3

print(f"{'r':>6}  {'engine chi/xi':>16}  {'closed form':>16}  {'rel diff':>9}")
for r in (1.5, 2.0, 3.0, 5.0, 8.0, 12.0, 20.0):
    engine = kerr_coefficient_pt(r, XI) / XI
    closed = chi_over_omega_z(r, XI) / XI
    print(f"{r:6.1f}  {engine:16.10f}  {closed:16.10f}  "
          f"{abs(engine - closed) / abs(closed):9.1e}")

print()
print("cubic-coupling channels out of |2,1,3> at r = 5 (units of hbar*omega_z):")
state = FockState(2, 1, 3)
zeta = cubic_coupling(5.0, XI)
channels = {tuple(c.intermediate): c for c in cubic_channels(2, 1, 3, 5.0, XI)}
for row, (dx, dy, ds) in sorted(ROW_DELTAS.items()):
    target = (2 + dx, 1 + dy, 3 + ds)
    engine = channels[target].element if target in channels else 0.0
    printed = published_element(row, state, 5.0, XI)
    note = "  <- published occupation factor is wrong" \
        if abs(engine - printed) > 1e-9 * zeta else ""
    print(f"  row {row:>2}  -> {str(target):>10}  engine {engine:+.6e}  "
          f"published {printed:+.6e}{note}")

print()
print("rows 5 and 10 printed n(n+2)-style factors where the ladder algebra")
print("gives n(n-1); every other row agrees to machine precision.")
