"""Exact diagonalization of the truncated anharmonic Hamiltonian.

Independent numerical check of the perturbative results: assemble
H = H0 + V3 + V4 over a truncated occupation basis, take the full dense
symmetric eigendecomposition, label eigenstates by maximum overlap with
the bare number states, and read the cross-Kerr coefficient off the
spectrum as the second difference

    chi = E(1,0,1) - E(1,0,0) - E(0,0,1) + E(0,0,0).

Because the coupling scales as sqrt(xi), sweeping a descending ladder of
xi values and fitting chi(xi) = s*xi + k*xi^2 isolates the O(xi) physics
from higher-order contamination; the slope s estimates chi/xi.

The rocking pair (1,0,n_s)/(0,1,n_s) stays exactly degenerate (rocking
occupations change only in steps of two, and x<->y symmetry maps the two
parity sectors onto each other), so eigenvalues are grouped into
degenerate clusters before assignment and the cluster's mean energy and
subspace overlap are used.
"""

from dataclasses import dataclass, field

import numpy as np

from .algebra import FockState, TruncatedBasis
from .hamiltonian import build_operators

__all__ = [
    "DimensionTooLarge",
    "AmbiguousAssignment",
    "OracleConfig",
    "DressedAssignment",
    "ChiFit",
    "diagonalize",
    "extract_chi_numeric",
    "extrapolate_chi",
]

DEFAULT_CUTOFFS = (10, 6, 10)
DEFAULT_XI_LADDER = (1e-2, 1e-3, 1e-4)
DEFAULT_DIMENSION_CEILING = 20_000
MIN_CUTOFFS = (6, 4, 6)

# Eigenvalues closer than this (relative to scale) are treated as one
# degenerate cluster; the only exact degeneracies are the rocking pairs,
# split at ~1e-14 by the solver, while physical gaps stay O(0.1).
_CLUSTER_GAP = 1e-9


class DimensionTooLarge(ValueError):
    """Requested truncated basis exceeds the dense-solver ceiling."""


class AmbiguousAssignment(ValueError):
    """No eigenvector overlaps the target state strongly enough to label it;
    the cutoff is too small or the coupling too large for perturbative
    labeling."""


@dataclass(frozen=True)
class OracleConfig:
    """Settings for an exact-diagonalization run."""

    r: float
    cutoffs: tuple[int, int, int] = DEFAULT_CUTOFFS
    xi_values: tuple[float, ...] = DEFAULT_XI_LADDER
    overlap_threshold: float = 0.5
    dimension_ceiling: int = DEFAULT_DIMENSION_CEILING

    def __post_init__(self):
        if any(c < m for c, m in zip(self.cutoffs, MIN_CUTOFFS)):
            raise ValueError(f"cutoffs must be at least {MIN_CUTOFFS}")
        if not self.xi_values or any(x <= 0 for x in self.xi_values):
            raise ValueError("xi_values must be positive")
        if list(self.xi_values) != sorted(self.xi_values, reverse=True):
            raise ValueError("xi_values must be sorted descending")
        if not 0.5 <= self.overlap_threshold < 1.0:
            raise ValueError("overlap_threshold must lie in [0.5, 1)")
        dim = TruncatedBasis(self.cutoffs).dimension
        if dim > self.dimension_ceiling:
            raise DimensionTooLarge(
                f"basis dimension {dim} exceeds ceiling {self.dimension_ceiling}")


@dataclass(frozen=True)
class DressedAssignment:
    """Dressed-state labels: target Fock state -> (eigenvalue, overlap^2)."""

    energies: dict[FockState, float]
    overlaps: dict[FockState, float]
    eigen_indices: dict[FockState, int] = field(default_factory=dict)


def diagonalize(r: float, xi: float, cutoffs: tuple[int, int, int],
                dimension_ceiling: int = DEFAULT_DIMENSION_CEILING):
    """Full spectrum of H0 + V3 + V4 over the truncated basis.

    Returns (eigenvalues ascending, eigenvector columns).  With xi = 0 the
    matrix is diagonal and the spectrum is exactly harmonic.
    """
    basis = TruncatedBasis(tuple(cutoffs))
    if basis.dimension > dimension_ceiling:
        raise DimensionTooLarge(
            f"basis dimension {basis.dimension} exceeds ceiling {dimension_ceiling}")
    h0, v3, v4 = build_operators(r, xi)
    h = (h0.matrix(basis) + v3.matrix(basis) + v4.matrix(basis)).toarray()
    return np.linalg.eigh(h)


def _assign(eigenvalues, eigenvectors, basis, targets, overlap_threshold):
    energies: dict[FockState, float] = {}
    overlaps: dict[FockState, float] = {}
    indices: dict[FockState, int] = {}
    for target in targets:
        row = basis.index(target)
        if row is None:
            raise ValueError(f"target state {tuple(target)} outside the cutoff box")
        weight = eigenvectors[row, :] ** 2
        best = int(np.argmax(weight))
        scale = 1.0 + abs(eigenvalues[best])
        cluster = np.flatnonzero(
            np.abs(eigenvalues - eigenvalues[best]) <= _CLUSTER_GAP * scale)
        subspace = float(weight[cluster].sum())
        if subspace <= overlap_threshold:
            raise AmbiguousAssignment(
                f"state {tuple(target)}: best overlap^2 {subspace:.4f} <= "
                f"threshold {overlap_threshold}; increase cutoffs or reduce xi")
        if best in indices.values():
            raise AmbiguousAssignment(
                f"state {tuple(target)} maps to an eigenvector already "
                "assigned to another target")
        energies[target] = float(eigenvalues[cluster].mean())
        overlaps[target] = subspace
        indices[target] = best
    return DressedAssignment(energies=energies, overlaps=overlaps,
                             eigen_indices=indices)


_STENCIL = (FockState(0, 0, 0), FockState(1, 0, 0),
            FockState(0, 0, 1), FockState(1, 0, 1))


def extract_chi_numeric(r: float, xi: float,
                        cutoffs: tuple[int, int, int] = DEFAULT_CUTOFFS,
                        overlap_threshold: float = 0.5,
                        rocking_mode: str = "x",
                        dimension_ceiling: int = DEFAULT_DIMENSION_CEILING,
                        ) -> tuple[float, DressedAssignment]:
    """chi (units of omega_z) from the dressed spectrum, with diagnostics.

    ``rocking_mode`` chooses which rocking axis carries the probe phonon;
    by x<->y symmetry the result is identical for both.
    """
    if rocking_mode not in ("x", "y"):
        raise ValueError("rocking_mode must be 'x' or 'y'")
    basis = TruncatedBasis(tuple(cutoffs))
    eigenvalues, eigenvectors = diagonalize(r, xi, cutoffs, dimension_ceiling)
    stencil = _STENCIL if rocking_mode == "x" else tuple(
        FockState(s.n_y, s.n_x, s.n_s) for s in _STENCIL)
    assignment = _assign(eigenvalues, eigenvectors, basis, stencil, overlap_threshold)
    e = [assignment.energies[s] for s in stencil]
    chi = e[3] - e[1] - e[2] + e[0]
    return chi, assignment


@dataclass(frozen=True)
class ChiFit:
    """Least-squares fit chi(xi) = slope*xi + curvature*xi^2."""

    slope: float
    curvature: float
    xi_values: tuple[float, ...]
    chi_values: tuple[float, ...]
    residuals: tuple[float, ...]

    @property
    def max_residual(self) -> float:
        return max(abs(x) for x in self.residuals)


def extrapolate_chi(r: float,
                    cutoffs: tuple[int, int, int] = DEFAULT_CUTOFFS,
                    xi_values: tuple[float, ...] = DEFAULT_XI_LADDER,
                    overlap_threshold: float = 0.5) -> ChiFit:
    """Fit the xi ladder and return the xi -> 0 slope of chi(xi).

    The slope is the numerical estimate of chi/xi at fixed r, free of
    O(xi^2) contamination; the quadratic term and the fit residuals are
    returned as quality diagnostics.
    """
    if len(xi_values) < 3:
        raise ValueError("need at least three xi values for the quadratic fit")
    chis = [extract_chi_numeric(r, xi, cutoffs, overlap_threshold)[0]
            for xi in xi_values]
    design = np.array([[xi, xi * xi] for xi in xi_values])
    coef, *_ = np.linalg.lstsq(design, np.array(chis), rcond=None)
    slope, curvature = (float(v) for v in coef)
    fitted = design @ coef
    residuals = tuple(float(f - c) for f, c in zip(fitted, chis))
    return ChiFit(slope=slope, curvature=curvature,
                  xi_values=tuple(xi_values), chi_values=tuple(chis),
                  residuals=residuals)
