"""Closed-form energy shifts and cross-Kerr coefficient.

Two variants of the coefficient are provided.  The corrected formula
(label ``paper``) is

    chi = -omega_s * xi * (omega_z/omega_r) * [ 1/2 + (omega_s^2/2)/(4 omega_r^2 - omega_s^2) ],

and the earlier published variant (label ``roos``) replaces the leading
1/2 in the bracket by 1.  Both diverge on the resonance locus
2*omega_r = omega_s, where the dispersive treatment breaks down; all
operations that divide by (4 omega_r^2 - omega_s^2) guard against it.

The per-state shifts: the quartic coupling contributes at first order

    eps4 = -hbar omega_s xi (omega_z/omega_r) (n_s + 1/2)(n_x + n_y + 1),

the cubic coupling at second order (cross-coupled part only)

    eps3 = -hbar omega_s xi (omega_z/omega_r)
           [ omega_s^2/(8 omega_r^2 - 2 omega_s^2) * n_s - (n_s + 1/2)/2 ]
           (n_x + n_y + 1),

and their sum is affine in n_s, which is what makes the stretch-frequency
shift per rocking phonon a clean Kerr coefficient.
"""

from dataclasses import dataclass
import math

from .constants import CODATA2018, PhysicalConstants
from .trap import IonSpecies, ModeSpectrum, TrapConfig, derive_spectrum

__all__ = [
    "NearResonance",
    "KerrResult",
    "SweepRow",
    "RESONANCE_GUARD",
    "kerr_bracket",
    "chi_over_omega_z",
    "epsilon3",
    "epsilon4",
    "combined_shift",
    "chi_paper",
    "chi_roos",
    "delta_omega_s",
    "sweep_chi",
]

# Reject |4 w_r^2 - w_s^2| below this many omega_z^2: closer to the
# resonance locus the perturbative coefficient is physically meaningless.
RESONANCE_GUARD = 1e-3

_FORMULAS = ("paper", "roos")


class NearResonance(ValueError):
    """Trap ratio too close to 2*omega_r = omega_s for the dispersive
    (perturbative) treatment to be valid."""


def _dimensionless(spectrum: ModeSpectrum) -> tuple[float, float, float]:
    """(w_r, w_s, xi) with frequencies in units of omega_z."""
    wz = spectrum.omega_z
    return spectrum.omega_r / wz, spectrum.omega_s / wz, spectrum.xi


def _guard_resonance(w_r: float, w_s: float, resonance_guard: float) -> float:
    detuning = 4.0 * w_r**2 - w_s**2
    if abs(detuning) < resonance_guard:
        raise NearResonance(
            f"|4 w_r^2 - w_s^2| = {abs(detuning):.3e} omega_z^2 is below the "
            f"guard {resonance_guard:.1e}; the dispersive formula diverges "
            "at 2 w_r = w_s")
    return detuning


def kerr_bracket(r: float, formula: str = "paper",
                 resonance_guard: float = RESONANCE_GUARD) -> float:
    """The square bracket of the coefficient: [1/2 or 1] + (w_s^2/2)/(4 w_r^2 - w_s^2)."""
    if formula not in _FORMULAS:
        raise ValueError(f"formula must be one of {_FORMULAS}")
    w_s2 = 3.0
    w_r2 = r * r - 1.0
    detuning = _guard_resonance(math.sqrt(w_r2), math.sqrt(w_s2), resonance_guard)
    leading = 0.5 if formula == "paper" else 1.0
    return leading + (w_s2 / 2.0) / detuning


def chi_over_omega_z(r: float, xi: float, formula: str = "paper",
                     resonance_guard: float = RESONANCE_GUARD) -> float:
    """Dimensionless coefficient chi/omega_z; depends on (r, xi) only."""
    w_r = math.sqrt(r * r - 1.0)
    w_s = math.sqrt(3.0)
    return -w_s * xi * (1.0 / w_r) * kerr_bracket(r, formula, resonance_guard)


def epsilon4(n_x: int, n_y: int, n_s: int, spectrum: ModeSpectrum,
             consts: PhysicalConstants = CODATA2018) -> float:
    """First-order shift from the quartic coupling, in joules."""
    w_r, w_s, xi = _dimensionless(spectrum)
    shift = -w_s * xi * (1.0 / w_r) * (n_s + 0.5) * (n_x + n_y + 1)
    return consts.hbar * spectrum.omega_z * shift


def epsilon3(n_x: int, n_y: int, n_s: int, spectrum: ModeSpectrum,
             consts: PhysicalConstants = CODATA2018,
             resonance_guard: float = RESONANCE_GUARD) -> float:
    """Second-order cross-coupled shift from the cubic coupling, in joules."""
    w_r, w_s, xi = _dimensionless(spectrum)
    detuning = _guard_resonance(w_r, w_s, resonance_guard)
    shift = -w_s * xi * (1.0 / w_r) * (
        w_s**2 / (2.0 * detuning) * n_s - 0.5 * (n_s + 0.5)) * (n_x + n_y + 1)
    return consts.hbar * spectrum.omega_z * shift


def combined_shift(n_x: int, n_y: int, n_s: int, spectrum: ModeSpectrum,
                   consts: PhysicalConstants = CODATA2018,
                   resonance_guard: float = RESONANCE_GUARD) -> float:
    """Total cross-coupled shift eps = eps3 + eps4 in joules, in its
    combined closed form (affine in n_s)."""
    w_r, w_s, xi = _dimensionless(spectrum)
    detuning = _guard_resonance(w_r, w_s, resonance_guard)
    shift = -w_s * xi * (1.0 / w_r) * (
        0.5 * (n_s + 0.5) + w_s**2 / (2.0 * detuning) * n_s) * (n_x + n_y + 1)
    return consts.hbar * spectrum.omega_z * shift


@dataclass(frozen=True)
class KerrResult:
    """Cross-Kerr coefficient with provenance and input echo."""

    chi: float           # rad/s
    chi_over_2pi: float  # Hz
    formula: str         # "paper" (corrected) or "roos" (earlier published)
    spectrum: ModeSpectrum
    species: IonSpecies | None = None
    trap: TrapConfig | None = None


def _chi_result(spectrum: ModeSpectrum, formula: str,
                species: IonSpecies | None, trap: TrapConfig | None,
                resonance_guard: float) -> KerrResult:
    r = spectrum.ratio_r
    chi = spectrum.omega_z * chi_over_omega_z(r, spectrum.xi, formula, resonance_guard)
    return KerrResult(chi=chi, chi_over_2pi=chi / (2.0 * math.pi),
                      formula=formula, spectrum=spectrum,
                      species=species, trap=trap)


def chi_paper(spectrum: ModeSpectrum, species: IonSpecies | None = None,
              trap: TrapConfig | None = None,
              resonance_guard: float = RESONANCE_GUARD) -> KerrResult:
    """Corrected coefficient (leading bracket term 1/2)."""
    return _chi_result(spectrum, "paper", species, trap, resonance_guard)


def chi_roos(spectrum: ModeSpectrum, species: IonSpecies | None = None,
             trap: TrapConfig | None = None,
             resonance_guard: float = RESONANCE_GUARD) -> KerrResult:
    """Earlier published coefficient (leading bracket term 1)."""
    return _chi_result(spectrum, "roos", species, trap, resonance_guard)


def delta_omega_s(n_x: int, n_y: int, spectrum: ModeSpectrum,
                  resonance_guard: float = RESONANCE_GUARD) -> float:
    """Stretch-frequency shift (rad/s) at a given rocking occupation.

    Computed as [eps(n_x, n_y, n_s+1) - eps(n_x, n_y, n_s)]/hbar; the
    combined shift is affine in n_s so the result is n_s-independent, and
    increasing n_x + n_y by one changes it by exactly chi.
    """
    w_r, w_s, xi = _dimensionless(spectrum)
    detuning = _guard_resonance(w_r, w_s, resonance_guard)
    per_phonon = -w_s * xi * (1.0 / w_r) * (0.5 + w_s**2 / (2.0 * detuning))
    return spectrum.omega_z * per_phonon * (n_x + n_y + 1)


@dataclass(frozen=True)
class SweepRow:
    """One grid point of a chi-vs-axial-frequency sweep."""

    nu_z_hz: float
    chi_paper_hz: float | None = None
    chi_roos_hz: float | None = None
    error: str | None = None


def sweep_chi(species: IonSpecies, nu_perp_hz: float, nu_z_grid_hz,
              formula: str = "both",
              consts: PhysicalConstants = CODATA2018,
              resonance_guard: float = RESONANCE_GUARD) -> list[SweepRow]:
    """Evaluate chi/2pi over a grid of axial frequencies.

    ``formula`` is "paper", "roos" or "both".  Physics errors (degenerate
    trap, near-resonance) are recorded per row instead of aborting the
    sweep; the corresponding chi cells stay empty.
    """
    if formula not in ("paper", "roos", "both"):
        raise ValueError("formula must be 'paper', 'roos' or 'both'")
    rows = []
    for nu_z in nu_z_grid_hz:
        try:
            trap = TrapConfig.from_linear(nu_perp_hz, nu_z)
            spectrum = derive_spectrum(species, trap, consts)
            want_paper = formula in ("paper", "both")
            want_roos = formula in ("roos", "both")
            rows.append(SweepRow(
                nu_z_hz=nu_z,
                chi_paper_hz=chi_paper(spectrum, species, trap,
                                       resonance_guard).chi_over_2pi
                if want_paper else None,
                chi_roos_hz=chi_roos(spectrum, species, trap,
                                     resonance_guard).chi_over_2pi
                if want_roos else None))
        except ValueError as exc:
            rows.append(SweepRow(nu_z_hz=nu_z, error=type(exc).__name__))
    return rows
