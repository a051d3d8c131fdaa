"""First- and second-order Rayleigh-Schrodinger perturbation theory.

The engine works directly on :class:`~ionkerr.algebra.OperatorSum` objects:
intermediates of the second-order sum are enumerated by applying the
perturbation to the target state, so every channel a polynomial operator
can reach is included automatically.  Units are hbar = omega_z = 1
throughout.

Degenerate rocking states (1,0,n_s)/(0,1,n_s) need no special treatment:
the couplings change each rocking occupation by 0 or 2, so the pair is
never connected and the nondegenerate formulas stay valid.  This is
asserted at runtime where it matters.
"""

from dataclasses import dataclass
import math
from typing import Callable

from .algebra import FockState, OperatorSum
from .hamiltonian import build_operators, cubic_coupling, harmonic_energy, mode_frequencies

__all__ = [
    "DegeneratePT",
    "PTShift",
    "CubicChannel",
    "first_order_shift",
    "second_order_shift",
    "cubic_channels",
    "published_element",
    "channel_denominator",
    "kerr_coefficient_pt",
    "ROW_DELTAS",
]

# Second-order denominators below this (in hbar*omega_z) mean an accidental
# degeneracy between the target and a reachable intermediate.
DENOMINATOR_GUARD = 1e-8


class DegeneratePT(ValueError):
    """A reachable intermediate state is (near-)degenerate with the target,
    so the nondegenerate second-order formula does not apply."""


@dataclass(frozen=True)
class PTShift:
    """Itemized perturbative shift of one state (units hbar*omega_z).

    ``contributions`` holds (intermediate, matrix element, denominator)
    for every reachable intermediate; ``second_order`` is the sum of
    element^2/denominator over them.
    """

    state: FockState
    first_order: float
    second_order: float
    contributions: tuple[tuple[FockState, float, float], ...]


def first_order_shift(op: OperatorSum, state: FockState) -> float:
    """<state| op |state>."""
    return op.expectation(state)


def _check_self_adjoint(op: OperatorSum) -> None:
    diff = (op - op.adjoint()).normalize()
    scale = max((abs(t.coefficient) for t in op.normalize().terms), default=0.0)
    if any(abs(t.coefficient) > 1e-12 * max(scale, 1.0) for t in diff.terms):
        raise ValueError("perturbation must be self-adjoint")


def second_order_shift(op: OperatorSum, state: FockState,
                       e0: Callable[[FockState], float]) -> PTShift:
    """Standard second-order sum over intermediates reached by ``op``.

    For a self-adjoint operator with real Fock matrix elements the
    amplitude <m|op|n> obtained by application equals <n|op|m>, so the
    shift is sum over m != n of element^2 / (E0(n) - E0(m)).
    """
    _check_self_adjoint(op)
    amplitudes = op.apply(state)
    first = amplitudes.pop(state, 0.0)
    e_state = e0(state)
    contributions = []
    for target in sorted(amplitudes):
        element = amplitudes[target]
        denom = e_state - e0(target)
        if abs(denom) < DENOMINATOR_GUARD:
            raise DegeneratePT(
                f"intermediate {tuple(target)} is degenerate with "
                f"{tuple(state)} (denominator {denom:.3e})")
        contributions.append((target, element, denom))
    second = sum(el * el / d for _, el, d in contributions)
    return PTShift(state=state, first_order=first, second_order=second,
                   contributions=tuple(contributions))


# ---------------------------------------------------------------------------
# The ten single-stretch-quantum channels of the cubic coupling, keyed by
# their occupation changes.  Rows 5 and 10 of the published closed forms
# disagree with the ladder algebra; both variants are kept so they can be
# printed side by side (see published_element).
# ---------------------------------------------------------------------------

ROW_DELTAS = {
    1: (0, 0, 1),
    2: (0, 0, -1),
    3: (2, 0, 1),
    4: (2, 0, -1),
    5: (-2, 0, 1),
    6: (-2, 0, -1),
    7: (0, 2, 1),
    8: (0, 2, -1),
    9: (0, -2, 1),
    10: (0, -2, -1),
}

_DELTA_TO_ROW = {delta: row for row, delta in ROW_DELTAS.items()}


def channel_denominator(row: int, r: float) -> float:
    """E0(n) - E0(intermediate) for one of the ten channels."""
    w_r, w_s = mode_frequencies(r)
    dx, dy, ds = ROW_DELTAS[row]
    return -(w_r * (dx + dy) + w_s * ds)


def _element_factor(row: int, state: FockState, r: float, corrected: bool) -> float:
    """Closed-form element in units of zeta; 0.0 for an absent channel."""
    n_x, n_y, n_s = state
    w_r, w_s = mode_frequencies(r)
    rho = w_r / w_s
    n_sum = n_x + n_y + 1
    if row == 1:
        return 2.0 * math.sqrt(n_s + 1) * (n_sum - rho * (n_s + 1))
    if row == 2:
        return 2.0 * math.sqrt(n_s) * (n_sum - rho * n_s)
    products = {
        3: (n_s + 1) * (n_x + 1) * (n_x + 2),
        4: n_s * (n_x + 1) * (n_x + 2),
        5: (n_s + 1) * n_x * (n_x - 1) if corrected else (n_s + 1) * n_x * (n_x + 2),
        6: n_s * n_x * (n_x - 1),
        7: (n_s + 1) * (n_y + 1) * (n_y + 2),
        8: n_s * (n_y + 1) * (n_y + 2),
        9: (n_s + 1) * n_y * (n_y - 1),
        10: n_s * n_y * (n_y - 1) if corrected else n_s * n_y * (n_x - 1),
    }
    return math.sqrt(max(products[row], 0))


def published_element(row: int, state: FockState, r: float, xi: float,
                      corrected: bool = False) -> float:
    """Closed-form matrix element of the cubic coupling for one channel.

    ``corrected=False`` evaluates the channel's published closed form;
    ``corrected=True`` the form the ladder algebra gives (they differ only
    in rows 5 and 10).  The forms are evaluated literally: a correct
    ladder formula vanishes by itself when the intermediate state does
    not exist, so a nonzero value on an absent channel marks a typo.
    Products that go negative under the square root evaluate to zero.
    """
    zeta = cubic_coupling(r, xi)
    return zeta * _element_factor(row, state, r, corrected)


@dataclass(frozen=True)
class CubicChannel:
    """One nonzero matrix element of the cubic coupling out of a state."""

    intermediate: FockState
    element: float
    denominator: float
    row: int | None  # 1..10, or None for the pure-stretch |delta n_s| = 3 channels


def cubic_channels(n_x: int, n_y: int, n_s: int, r: float, xi: float) -> list[CubicChannel]:
    """All engine-derived channels of the cubic coupling from |n_x,n_y,n_s>.

    Includes the pure-stretch third-harmonic channels (row None) that the
    closed-form channel table omits; those never produce cross terms but do
    shift single-mode energies.
    """
    state = FockState(n_x, n_y, n_s)
    _, v3, _ = build_operators(r, xi)
    w_r, w_s = mode_frequencies(r)
    channels = []
    amps = v3.apply(state)
    for target in sorted(amps):
        dx, dy, ds = (target.n_x - n_x, target.n_y - n_y, target.n_s - n_s)
        # energy distance straight from the occupation changes; differencing
        # the two absolute energies instead would round at the last ulp
        channels.append(CubicChannel(
            intermediate=target,
            element=amps[target],
            denominator=-(w_r * (dx + dy) + w_s * ds),
            row=_DELTA_TO_ROW.get((dx, dy, ds))))
    return channels


_STENCIL = (FockState(0, 0, 0), FockState(1, 0, 0),
            FockState(0, 0, 1), FockState(1, 0, 1))


def kerr_coefficient_pt(r: float, xi: float) -> float:
    """Cross-Kerr coefficient chi in units of omega_z, from the engine.

    Evaluates eps(n) = <n|V4|n> + second order of V3 on the four-state
    stencil and returns the second difference

        chi = eps(1,0,1) - eps(1,0,0) - eps(0,0,1) + eps(0,0,0),

    which isolates the n_s*(n_x+n_y) cross term and cancels every
    single-mode anharmonic self-shift identically.
    """
    _, v3, v4 = build_operators(r, xi)
    e0 = harmonic_energy(r)
    eps = {}
    for state in _STENCIL:
        shift = second_order_shift(v3, state, e0)
        partner = FockState(state.n_y, state.n_x, state.n_s)
        if partner != state and any(c[0] == partner for c in shift.contributions):
            raise DegeneratePT(
                f"cubic coupling connects {tuple(state)} to its degenerate "
                f"rocking partner {tuple(partner)}")
        eps[state] = first_order_shift(v4, state) + shift.second_order
    return (eps[_STENCIL[3]] - eps[_STENCIL[1]]
            - eps[_STENCIL[2]] + eps[_STENCIL[0]])
