"""Quantized relative-motion Hamiltonian in dimensionless units.

Everything is expressed with hbar = omega_z = 1, where the whole problem
is fixed by two numbers: the trap ratio r = omega_perp/omega_z and the
anharmonicity scale xi.  The stretch frequency is sqrt(3), the rocking
frequency sqrt(r^2 - 1), and the equilibrium half-separation becomes
z0 = 1/sqrt(2 xi).

The cubic and quartic couplings are built by substituting the quadrature
operators

    x = sqrt(1/(4 w_r)) (a + a+),   y likewise with b,
    u = sqrt(1/(4 w_s)) (c + c+),

into the classical potential terms

    V3 = (w_s^2/z0)   [ (x^2+y^2) u  - (2/3) u^3 ],
    V4 = (w_s^2/z0^2) [ (x^2+y^2)^2/4 + (2/3) u^4 - 2 (x^2+y^2) u^2 ],

and normal ordering.  Regenerating the operator content from the classical
expansion (rather than typing in a quantized display) keeps the engine
independent of transcription slips; the test suite checks the expansion
coefficients against finite differences of the raw Coulomb potential.
"""

import math

from .algebra import FockState, Mode, OperatorSum, create, destroy, number, scalar
from .trap import SQRT3, DegenerateTrap

__all__ = [
    "mode_frequencies",
    "cubic_coupling",
    "build_operators",
    "harmonic_energy",
]


def mode_frequencies(r: float) -> tuple[float, float]:
    """(w_r, w_s) in units of omega_z; requires r > 1."""
    if r <= 1.0:
        raise DegenerateTrap(f"trap ratio r = {r:.6g} must exceed 1")
    return math.sqrt(r * r - 1.0), SQRT3


def cubic_coupling(r: float, xi: float) -> float:
    """The cubic coupling energy zeta in units of hbar*omega_z."""
    w_r, w_s = mode_frequencies(r)
    return math.sqrt(xi * w_s**3 / (32.0 * w_r**2))


def build_operators(r: float, xi: float) -> tuple[OperatorSum, OperatorSum, OperatorSum]:
    """Return (H0, V3, V4) as normal-ordered operator sums.

    H0 = w_r (n_x + n_y + 1) + w_s (n_s + 1/2);  V3 scales as sqrt(xi) and
    V4 as xi.  xi = 0 gives empty perturbations (the harmonic limit).
    """
    if xi < 0:
        raise ValueError("xi must be nonnegative")
    w_r, w_s = mode_frequencies(r)

    h0 = (w_r * (number(Mode.X) + number(Mode.Y)) + w_s * number(Mode.S)
          + scalar(w_r + 0.5 * w_s)).normalize()

    s_r = math.sqrt(1.0 / (4.0 * w_r))
    s_s = math.sqrt(1.0 / (4.0 * w_s))
    x = s_r * (destroy(Mode.X) + create(Mode.X))
    y = s_r * (destroy(Mode.Y) + create(Mode.Y))
    u = s_s * (destroy(Mode.S) + create(Mode.S))

    # 1/z0 = sqrt(2 xi) and 1/z0^2 = 2 xi, so the couplings stay finite
    # (identically zero) at xi = 0.
    g3 = w_s**2 * math.sqrt(2.0 * xi)
    g4 = w_s**2 * (2.0 * xi)

    rho2 = x * x + y * y
    u2 = u * u
    v3 = (g3 * (rho2 * u - (2.0 / 3.0) * (u2 * u))).normalize()
    v4 = (g4 * (0.25 * (rho2 * rho2) + (2.0 / 3.0) * (u2 * u2)
                - 2.0 * (rho2 * u2))).normalize()
    return h0, v3, v4


def harmonic_energy(r: float):
    """Unperturbed energy functional E0(n) = w_r (n_x+n_y+1) + w_s (n_s+1/2).

    Returns a callable FockState -> float (units of hbar*omega_z); strictly
    increasing in each occupation number.
    """
    w_r, w_s = mode_frequencies(r)

    def e0(state: FockState) -> float:
        return w_r * (state[0] + state[1] + 1) + w_s * (state[2] + 0.5)

    return e0
