import math

import numpy as np
import pytest

from ionkerr import (DegenerateTrap, FockState, Mode, TruncatedBasis,
                     build_operators, cubic_coupling, harmonic_energy,
                     mode_frequencies, to_matrix)

import reference

R, XI = 5.0, 1e-3


def coefficient_of(op, factors):
    """Coefficient of one canonical monomial in a normalized operator."""
    for term in op.normalize().terms:
        if term.factors == factors:
            return term.coefficient
    return 0.0


def fac(*pairs):
    return tuple((Mode[m], kind == "+") for m, kind in pairs)


def test_mode_frequencies():
    w_r, w_s = mode_frequencies(5.0)
    assert w_r == pytest.approx(math.sqrt(24), rel=1e-15)
    assert w_s == pytest.approx(math.sqrt(3), rel=1e-15)
    with pytest.raises(DegenerateTrap):
        mode_frequencies(1.0)


def test_harmonic_energy_values_and_monotonicity():
    e0 = harmonic_energy(R)
    w_r, w_s = mode_frequencies(R)
    assert e0(FockState(0, 0, 0)) == pytest.approx(w_r + 0.5 * w_s, rel=1e-15)
    assert e0(FockState(2, 1, 3)) == pytest.approx(4 * w_r + 3.5 * w_s, rel=1e-15)
    for mode in range(3):
        lo = [0, 0, 0]
        hi = lo.copy()
        hi[mode] = 1
        assert e0(FockState(*hi)) > e0(FockState(*lo))


def test_h0_diagonal():
    h0, _, _ = build_operators(R, XI)
    e0 = harmonic_energy(R)
    for state in TruncatedBasis((2, 2, 2)).states:
        assert h0.expectation(state) == pytest.approx(e0(state), rel=1e-14)


def test_quartic_cross_coefficient():
    # the n_x*n_s monomial carries the whole cross-Kerr first-order physics
    _, _, v4 = build_operators(R, XI)
    w_r, w_s = mode_frequencies(R)
    expected = -w_s * XI / w_r
    assert coefficient_of(v4, fac(("X", "+"), ("X", "-"), ("S", "+"), ("S", "-"))) \
        == pytest.approx(expected, rel=1e-12)
    assert coefficient_of(v4, fac(("Y", "+"), ("Y", "-"), ("S", "+"), ("S", "-"))) \
        == pytest.approx(expected, rel=1e-12)


def test_cubic_coefficients():
    _, v3, _ = build_operators(R, XI)
    zeta = cubic_coupling(R, XI)
    w_r, w_s = mode_frequencies(R)
    assert coefficient_of(v3, fac(("X", "+"), ("X", "-"), ("S", "-"))) \
        == pytest.approx(2 * zeta, rel=1e-12)
    assert coefficient_of(v3, fac(("X", "+"), ("X", "-"), ("S", "+"))) \
        == pytest.approx(2 * zeta, rel=1e-12)
    # bare c picks up -2 zeta w_r/w_s from the u^3 term on top of 2 zeta
    assert coefficient_of(v3, fac(("S", "-"))) \
        == pytest.approx(2 * zeta * (1 - w_r / w_s), rel=1e-12)
    assert coefficient_of(v3, fac(("X", "-"), ("X", "-"), ("S", "-"))) \
        == pytest.approx(zeta, rel=1e-12)


def test_coupling_scaling_with_xi():
    _, v3a, v4a = build_operators(R, XI)
    _, v3b, v4b = build_operators(R, 2 * XI)
    for ta, tb in zip(v3a.terms, v3b.terms):
        assert ta.factors == tb.factors
        assert tb.coefficient == pytest.approx(math.sqrt(2) * ta.coefficient, rel=1e-14)
    for ta, tb in zip(v4a.terms, v4b.terms):
        assert ta.factors == tb.factors
        assert tb.coefficient == pytest.approx(2 * ta.coefficient, rel=1e-14)


def test_harmonic_limit_empty_couplings():
    _, v3, v4 = build_operators(R, 0.0)
    assert v3.terms == ()
    assert v4.terms == ()


def test_rejects_bad_inputs():
    with pytest.raises(DegenerateTrap):
        build_operators(0.8, XI)
    with pytest.raises(ValueError):
        build_operators(R, -1e-4)


def test_operators_are_self_adjoint_matrices():
    basis = TruncatedBasis((4, 3, 4))
    for op in build_operators(R, XI):
        mat = to_matrix(op, basis).toarray()
        assert np.abs(mat - mat.T).max() < 1e-14


def test_matrices_match_kron_reference():
    # same Hamiltonian built two unrelated ways: symbolic ladder algebra
    # vs dense Kronecker products of quadrature matrices
    cutoffs = (5, 4, 5)
    basis = TruncatedBasis(cutoffs)
    h0, v3, v4 = build_operators(R, XI)
    h_pkg = (to_matrix(h0, basis) + to_matrix(v3, basis)
             + to_matrix(v4, basis)).toarray()
    h0_ref, v3_ref, v4_ref = reference.hamiltonian_matrices(R, XI, cutoffs)
    h_ref = h0_ref + v3_ref + v4_ref
    # the kron route keeps amplitudes that bounce above the cutoff and back,
    # which hard truncation drops; those differ only in the top two rungs,
    # so compare the interior block
    keep = [basis.index(s) for s in basis.states
            if s.n_x <= cutoffs[0] - 2 and s.n_y <= cutoffs[1] - 2
            and s.n_s <= cutoffs[2] - 4]
    sub = np.ix_(keep, keep)
    assert np.abs(h_pkg[sub] - h_ref[sub]).max() < 1e-13


def test_classical_expansion_against_coulomb_potential():
    """Finite differences of the raw potential reproduce the cubic and
    quartic expansion coefficients the builder uses."""
    r, xi = 5.0, 1e-2
    w_r2 = r * r - 1.0
    w_s2 = 3.0
    z0 = 1.0 / math.sqrt(2 * xi)
    coulomb = 2 * z0**3  # equilibrium condition fixes the strength
    g3 = w_s2 * math.sqrt(2 * xi)
    g4 = w_s2 * 2 * xi

    def potential(x, y, u):
        return (r * r * (x * x + y * y) + (z0 + u) ** 2
                + coulomb / math.sqrt(x * x + y * y + (z0 + u) ** 2))

    def d1(f, h):
        return (f(h) - f(-h)) / (2 * h)

    def d2(f, h):
        return (f(h) - 2 * f(0.0) + f(-h)) / (h * h)

    def d3(f, h):
        return (f(2 * h) - 2 * f(h) + 2 * f(-h) - f(-2 * h)) / (2 * h**3)

    def d4(f, h):
        return (f(2 * h) - 4 * f(h) + 6 * f(0.0) - 4 * f(-h) + f(-2 * h)) / h**4

    def richardson(estimate, h):
        return (4 * estimate(h / 2) - estimate(h)) / 3

    derivatives = {
        "x^2": (lambda h: d2(lambda t: potential(t, 0, 0), h), 2 * w_r2),
        "u^2": (lambda h: d2(lambda t: potential(0, 0, t), h), 2 * w_s2),
        "u^3": (lambda h: d3(lambda t: potential(0, 0, t), h), -4 * g3),
        "x^2 u": (lambda h: d1(lambda u: d2(lambda t: potential(t, 0, u), h), h),
                  2 * g3),
        "x^2 u^2": (lambda h: d2(lambda u: d2(lambda t: potential(t, 0, u), h), h),
                    -8 * g4),
        "u^4": (lambda h: d4(lambda t: potential(0, 0, t), h), 16 * g4),
        "x^2 y^2": (lambda h: d2(lambda y: d2(lambda t: potential(t, y, 0), h), h),
                    2 * g4),
        "x^4": (lambda h: d4(lambda t: potential(t, 0, 0), h), 6 * g4),
    }
    for name, (estimate, expected) in derivatives.items():
        got = richardson(estimate, 0.2)
        assert got == pytest.approx(expected, rel=1e-4), name
