"""Three-mode bosonic ladder-operator algebra over a Fock basis.

Operators are real-coefficient polynomials in the ladder operators of the
three relative-motion modes: X and Y (the two rocking axes) and S (the
stretch axis).  An :class:`OperatorSum` is a list of monomials; a
:class:`LadderMonomial` is a coefficient times an ordered product of
elementary raising/lowering factors, applied right to left.

Everything here is exact ladder arithmetic plus IEEE floats: normal
ordering uses [a, a†] = 1 within a mode, different modes commute, and
application to number states uses a|n> = sqrt(n)|n-1>,
a†|n> = sqrt(n+1)|n+1>.  Matrices over a truncated occupation basis
drop amplitudes that leave the cutoff box.
"""

from dataclasses import dataclass
from enum import IntEnum
import math
from itertools import product
from typing import Iterable, NamedTuple

from scipy import sparse

__all__ = [
    "Mode",
    "FockState",
    "LadderMonomial",
    "OperatorSum",
    "TruncatedBasis",
    "create",
    "destroy",
    "number",
    "scalar",
    "apply",
    "normalize",
    "to_matrix",
]


class Mode(IntEnum):
    """The three relative-motion modes, in canonical order X < Y < S."""

    X = 0
    Y = 1
    S = 2


class FockState(NamedTuple):
    """Occupation-number state |n_x, n_y, n_s>."""

    n_x: int
    n_y: int
    n_s: int


@dataclass(frozen=True)
class LadderMonomial:
    """coefficient * (ordered product of ladder factors).

    ``factors`` is a tuple of (mode, raising) pairs; the rightmost factor
    acts first, as in an ordinary operator product.  An empty tuple is a
    scalar term.
    """

    coefficient: float
    factors: tuple[tuple[Mode, bool], ...] = ()

    def apply(self, state: FockState) -> tuple[float, FockState | None]:
        """Act on a number state; returns (amplitude, out_state).

        A lowering factor hitting occupation 0 annihilates the branch and
        returns (0.0, None).
        """
        amp = self.coefficient
        occ = list(state)
        for mode, raising in reversed(self.factors):
            n = occ[mode]
            if raising:
                amp *= math.sqrt(n + 1)
                occ[mode] = n + 1
            else:
                if n == 0:
                    return 0.0, None
                amp *= math.sqrt(n)
                occ[mode] = n - 1
        return amp, FockState(*occ)

    def adjoint(self) -> "LadderMonomial":
        return LadderMonomial(
            self.coefficient,
            tuple((mode, not raising) for mode, raising in reversed(self.factors)))


def _normal_order_single_mode(kinds: Iterable[bool]) -> dict[tuple[int, int], float]:
    """Normal-order a product of one mode's factors.

    ``kinds`` lists raising flags left to right.  Returns a map
    (raise_power, lower_power) -> coefficient for the expansion in terms
    a†^p a^q, using a a† = a† a + 1 repeatedly.
    """
    terms = {(0, 0): 1.0}
    for raising in kinds:
        out: dict[tuple[int, int], float] = {}
        for (p, q), coeff in terms.items():
            if raising:
                # (a+^p a^q) a+ = a+^{p+1} a^q + q a+^p a^{q-1}
                out[(p + 1, q)] = out.get((p + 1, q), 0.0) + coeff
                if q > 0:
                    out[(p, q - 1)] = out.get((p, q - 1), 0.0) + coeff * q
            else:
                out[(p, q + 1)] = out.get((p, q + 1), 0.0) + coeff
        terms = out
    return terms


@dataclass(frozen=True)
class OperatorSum:
    """A real-coefficient polynomial in the ladder operators of all modes."""

    terms: tuple[LadderMonomial, ...] = ()

    # -- algebra -----------------------------------------------------------

    def __add__(self, other):
        other = _as_operator(other)
        return OperatorSum(self.terms + other.terms)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-_as_operator(other))

    def __rsub__(self, other):
        return _as_operator(other) + (-self)

    def __neg__(self):
        return OperatorSum(tuple(
            LadderMonomial(-t.coefficient, t.factors) for t in self.terms))

    def __mul__(self, other):
        if isinstance(other, (int, float)):
            return OperatorSum(tuple(
                LadderMonomial(t.coefficient * other, t.factors) for t in self.terms))
        other = _as_operator(other)
        return OperatorSum(tuple(
            LadderMonomial(a.coefficient * b.coefficient, a.factors + b.factors)
            for a in self.terms for b in other.terms))

    def __rmul__(self, other):
        if isinstance(other, (int, float)):
            return self * other
        return _as_operator(other) * self

    def __pow__(self, n: int):
        if n < 0 or int(n) != n:
            raise ValueError("operator powers must be nonnegative integers")
        out = scalar(1.0)
        for _ in range(int(n)):
            out = out * self
        return out

    def adjoint(self) -> "OperatorSum":
        return OperatorSum(tuple(t.adjoint() for t in self.terms))

    # -- semantics ---------------------------------------------------------

    def apply(self, state: FockState) -> dict[FockState, float]:
        """Expand op|state> as a map out_state -> real amplitude."""
        out: dict[FockState, float] = {}
        for term in self.terms:
            amp, target = term.apply(state)
            if target is None or amp == 0.0:
                continue
            out[target] = out.get(target, 0.0) + amp
        return {s: a for s, a in out.items() if a != 0.0}

    def expectation(self, state: FockState) -> float:
        """<state| op |state>."""
        return self.apply(state).get(state, 0.0)

    def normalize(self) -> "OperatorSum":
        """Canonical normal-ordered form.

        Within each monomial the factors are grouped X < Y < S with all
        raising factors left of lowering ones; commutators are resolved,
        like monomials merged, and exact-zero coefficients dropped.  Two
        operators that act identically on Fock space normalize to the
        same term list.
        """
        merged: dict[tuple[int, ...], float] = {}
        for term in self.terms:
            per_mode = []
            for mode in Mode:
                kinds = [raising for m, raising in term.factors if m == mode]
                per_mode.append(_normal_order_single_mode(kinds))
            for combo in product(*(d.items() for d in per_mode)):
                key = tuple(n for (pq, _) in combo for n in pq)
                coeff = term.coefficient
                for _, c in combo:
                    coeff *= c
                merged[key] = merged.get(key, 0.0) + coeff
        out = []
        for key in sorted(merged):
            coeff = merged[key]
            if coeff == 0.0:
                continue
            factors = []
            for mode in Mode:
                p, q = key[2 * mode], key[2 * mode + 1]
                factors.extend([(mode, True)] * p)
                factors.extend([(mode, False)] * q)
            out.append(LadderMonomial(coeff, tuple(factors)))
        return OperatorSum(tuple(out))

    def is_zero(self, tol: float = 0.0) -> bool:
        return all(abs(t.coefficient) <= tol for t in self.normalize().terms)

    def matrix(self, basis: "TruncatedBasis") -> sparse.csr_matrix:
        """Matrix over the truncated basis; out-of-cutoff amplitudes dropped."""
        rows, cols, vals = [], [], []
        for col, state in enumerate(basis.states):
            for target, amp in self.apply(state).items():
                row = basis.index(target)
                if row is None:
                    continue
                rows.append(row)
                cols.append(col)
                vals.append(amp)
        return sparse.csr_matrix(
            (vals, (rows, cols)), shape=(basis.dimension, basis.dimension))


def _as_operator(value) -> OperatorSum:
    if isinstance(value, OperatorSum):
        return value
    if isinstance(value, (int, float)):
        return scalar(float(value))
    raise TypeError(f"cannot interpret {type(value).__name__} as an operator")


def create(mode: Mode) -> OperatorSum:
    """Creation operator of one mode."""
    return OperatorSum((LadderMonomial(1.0, ((mode, True),)),))


def destroy(mode: Mode) -> OperatorSum:
    """Annihilation operator of one mode."""
    return OperatorSum((LadderMonomial(1.0, ((mode, False),)),))


def number(mode: Mode) -> OperatorSum:
    """Number operator a† a of one mode."""
    return OperatorSum((LadderMonomial(1.0, ((mode, True), (mode, False))),))


def scalar(value: float) -> OperatorSum:
    """Multiple of the identity."""
    return OperatorSum((LadderMonomial(float(value)),)) if value != 0.0 \
        else OperatorSum(())


@dataclass(frozen=True)
class TruncatedBasis:
    """All occupation states (n_x, n_y, n_s) with n_m <= cutoff per mode.

    Enumeration is row-major with n_s varying fastest, then n_y, then n_x,
    so the index of (n_x, n_y, n_s) is
    (n_x*(N_y+1) + n_y)*(N_s+1) + n_s.
    """

    cutoffs: tuple[int, int, int]

    def __post_init__(self):
        if any(c < 0 or int(c) != c for c in self.cutoffs):
            raise ValueError("cutoffs must be nonnegative integers")

    @property
    def dimension(self) -> int:
        nx, ny, ns = self.cutoffs
        return (nx + 1) * (ny + 1) * (ns + 1)

    @property
    def states(self) -> list[FockState]:
        nx, ny, ns = self.cutoffs
        return [FockState(ix, iy, iz)
                for ix in range(nx + 1)
                for iy in range(ny + 1)
                for iz in range(ns + 1)]

    def index(self, state: FockState) -> int | None:
        """Position of ``state`` in the enumeration, or None if outside."""
        nx, ny, ns = self.cutoffs
        if not (0 <= state.n_x <= nx and 0 <= state.n_y <= ny and 0 <= state.n_s <= ns):
            return None
        return (state.n_x * (ny + 1) + state.n_y) * (ns + 1) + state.n_s


def apply(op: OperatorSum, state: FockState) -> dict[FockState, float]:
    """Functional form of :meth:`OperatorSum.apply`."""
    return op.apply(state)


def normalize(op: OperatorSum) -> OperatorSum:
    """Functional form of :meth:`OperatorSum.normalize`."""
    return op.normalize()


def to_matrix(op: OperatorSum, basis: TruncatedBasis) -> sparse.csr_matrix:
    """Functional form of :meth:`OperatorSum.matrix`."""
    return op.matrix(basis)
