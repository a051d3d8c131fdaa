"""Cross-Kerr phonon-phonon coupling of two trapped ions.

Three independent routes to the coupling constant chi of the Kerr-type
Hamiltonian H = hbar * chi * n_rocking * n_stretch:

* :mod:`ionkerr.analytics` -- closed forms (the corrected formula and the
  earlier published variant);
* :mod:`ionkerr.perturbation` -- automated second-order perturbation
  theory over a bosonic ladder-operator algebra;
* :mod:`ionkerr.diagonalization` -- exact diagonalization of the truncated
  anharmonic Hamiltonian with a xi -> 0 extrapolation.

``IONKERR_THREADS``, when set, caps the BLAS thread pools (it must take
effect before numpy loads, hence the placement here).
"""

import os as _os

if "IONKERR_THREADS" in _os.environ:
    _cap = _os.environ["IONKERR_THREADS"]
    for _var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS",
                 "MKL_NUM_THREADS", "NUMEXPR_NUM_THREADS"):
        _os.environ.setdefault(_var, _cap)

__version__ = "0.1.0"

from .algebra import (FockState, LadderMonomial, Mode, OperatorSum,
                      TruncatedBasis, apply, create, destroy, normalize,
                      number, scalar, to_matrix)
from .analytics import (KerrResult, NearResonance, SweepRow, chi_over_omega_z,
                        chi_paper, chi_roos, combined_shift, delta_omega_s,
                        epsilon3, epsilon4, kerr_bracket, sweep_chi)
from .config import (ParseError, RunConfig, ValidationError, format_config,
                     parse_config)
from .constants import CODATA2018, ION_MASSES_AMU, PhysicalConstants
from .diagonalization import (AmbiguousAssignment, ChiFit, DimensionTooLarge,
                              DressedAssignment, OracleConfig, diagonalize,
                              extract_chi_numeric, extrapolate_chi)
from .hamiltonian import (build_operators, cubic_coupling, harmonic_energy,
                          mode_frequencies)
from .perturbation import (CubicChannel, DegeneratePT, PTShift,
                           cubic_channels, first_order_shift,
                           kerr_coefficient_pt, published_element,
                           second_order_shift)
from .trap import (DegenerateTrap, IonSpecies, ModeSpectrum, TrapConfig,
                   derive_spectrum, dimensionless_params)

__all__ = [
    "__version__",
    # algebra
    "Mode", "FockState", "LadderMonomial", "OperatorSum", "TruncatedBasis",
    "create", "destroy", "number", "scalar", "apply", "normalize", "to_matrix",
    # trap model
    "PhysicalConstants", "CODATA2018", "ION_MASSES_AMU",
    "IonSpecies", "TrapConfig", "ModeSpectrum", "DegenerateTrap",
    "derive_spectrum", "dimensionless_params",
    # hamiltonian
    "build_operators", "cubic_coupling", "harmonic_energy", "mode_frequencies",
    # perturbation engine
    "PTShift", "CubicChannel", "DegeneratePT",
    "first_order_shift", "second_order_shift", "cubic_channels",
    "published_element", "kerr_coefficient_pt",
    # exact diagonalization
    "OracleConfig", "DressedAssignment", "ChiFit",
    "AmbiguousAssignment", "DimensionTooLarge",
    "diagonalize", "extract_chi_numeric", "extrapolate_chi",
    # closed forms
    "KerrResult", "SweepRow", "NearResonance",
    "kerr_bracket", "chi_over_omega_z", "epsilon3", "epsilon4",
    "combined_shift", "chi_paper", "chi_roos", "delta_omega_s", "sweep_chi",
    # config
    "RunConfig", "ParseError", "ValidationError", "parse_config", "format_config",
]
