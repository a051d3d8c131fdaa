import math

import numpy as np
import pytest

from ionkerr import (DegeneratePT, FockState, Mode, build_operators,
                     chi_over_omega_z, create, cubic_channels, cubic_coupling,
                     destroy, first_order_shift, harmonic_energy,
                     kerr_coefficient_pt, mode_frequencies, number,
                     published_element, second_order_shift)
from ionkerr.perturbation import ROW_DELTAS, channel_denominator

import reference

R, XI = 5.0, 1e-3
W_R, W_S = mode_frequencies(R)
ZETA = cubic_coupling(R, XI)


def stencil_difference(values):
    """f(1,0,1) - f(1,0,0) - f(0,0,1) + f(0,0,0) for a dict keyed by state."""
    return (values[FockState(1, 0, 1)] - values[FockState(1, 0, 0)]
            - values[FockState(0, 0, 1)] + values[FockState(0, 0, 0)])


# -- first order ----------------------------------------------------------------

def test_cubic_coupling_has_no_first_order_shift():
    _, v3, _ = build_operators(R, XI)
    rng = np.random.default_rng(3)
    for _ in range(20):
        state = FockState(*(int(n) for n in rng.integers(0, 6, size=3)))
        assert first_order_shift(v3, state) == 0.0


def test_number_operator_first_order():
    assert first_order_shift(number(Mode.S), FockState(0, 0, 3)) == pytest.approx(3.0)


def test_quartic_first_order_vacuum():
    # hand evaluation: cross part -w_s/(2 w_r), stretch self term +1/4,
    # rocking self term +w_s^2/(4 w_r^2), all times xi
    _, _, v4 = build_operators(R, XI)
    expected = XI * (-W_S / (2 * W_R) + 0.25 + W_S**2 / (4 * W_R**2))
    assert first_order_shift(v4, FockState(0, 0, 0)) == pytest.approx(expected, rel=1e-12)
    assert expected == pytest.approx(XI * 0.1044733047033631, rel=1e-12)


def test_quartic_first_order_cross_part():
    # double difference isolates the -w_s xi/w_r * n_s * (n_x+n_y) cross term
    _, _, v4 = build_operators(R, XI)
    rng = np.random.default_rng(5)
    for _ in range(25):
        n_x, n_y, n_s = (int(v) for v in rng.integers(0, 6, size=3))
        cross = (first_order_shift(v4, FockState(n_x, n_y, n_s))
                 - first_order_shift(v4, FockState(n_x, n_y, 0))
                 - first_order_shift(v4, FockState(0, 0, n_s))
                 + first_order_shift(v4, FockState(0, 0, 0)))
        expected = -W_S * XI / W_R * n_s * (n_x + n_y)
        assert cross == pytest.approx(expected, rel=1e-12, abs=1e-18)


# -- second order -----------------------------------------------------------------

def test_displaced_oscillator_exact():
    g = 0.05
    c, cd = destroy(Mode.S), create(Mode.S)
    shift = second_order_shift(g * (c + cd), FockState(0, 0, 0), harmonic_energy(R))
    assert shift.second_order == pytest.approx(-g * g / W_S, rel=1e-14)
    assert shift.first_order == 0.0


def test_shift_record_invariants():
    _, v3, _ = build_operators(R, XI)
    state = FockState(2, 1, 3)
    shift = second_order_shift(v3, state, harmonic_energy(R))
    total = sum(el * el / dn for _, el, dn in shift.contributions)
    assert shift.second_order == pytest.approx(total, rel=1e-12)
    assert all(inter != state for inter, _, _ in shift.contributions)
    # contribution list is exhaustive: one entry per reachable state
    reachable = {s for s, a in v3.apply(state).items() if s != state and a != 0.0}
    assert {inter for inter, _, _ in shift.contributions} == reachable


def test_second_order_cross_part_matches_closed_form():
    _, v3, _ = build_operators(R, XI)
    e0 = harmonic_energy(R)
    damp = W_S**2 / (8 * W_R**2 - 2 * W_S**2)
    rng = np.random.default_rng(9)
    for _ in range(15):
        n_x, n_y, n_s = (int(v) for v in rng.integers(0, 6, size=3))
        values = {}
        for state in (FockState(n_x, n_y, n_s), FockState(n_x, n_y, 0),
                      FockState(0, 0, n_s), FockState(0, 0, 0)):
            values[state] = second_order_shift(v3, state, e0).second_order
        cross = (values[FockState(n_x, n_y, n_s)] - values[FockState(n_x, n_y, 0)]
                 - values[FockState(0, 0, n_s)] + values[FockState(0, 0, 0)])
        expected = -W_S * XI / W_R * (damp - 0.5) * n_s * (n_x + n_y)
        assert cross == pytest.approx(expected, rel=1e-10, abs=1e-18)


def test_rejects_non_self_adjoint():
    with pytest.raises(ValueError):
        second_order_shift(destroy(Mode.S), FockState(0, 0, 1), harmonic_energy(R))


def test_degenerate_denominator_guarded():
    # at r = sqrt(7)/2 the (n_x+2, n_s-1) channel has zero energy distance
    with pytest.raises(DegeneratePT):
        kerr_coefficient_pt(math.sqrt(7) / 2, XI)


# -- channel table ------------------------------------------------------------------

def test_vacuum_channels():
    channels = cubic_channels(0, 0, 0, R, XI)
    targets = {tuple(c.intermediate) for c in channels}
    assert targets == {(0, 0, 1), (2, 0, 1), (0, 2, 1), (0, 0, 3)}


def test_specific_elements_at_2_1_3():
    channels = {tuple(c.intermediate): c for c in cubic_channels(2, 1, 3, R, XI)}
    # one stretch quantum up: 2 zeta sqrt(4) [(2+1+1) - (w_r/w_s)*4]
    up = channels[(2, 1, 4)]
    assert up.element == pytest.approx(
        2 * ZETA * 2 * (4 - (W_R / W_S) * 4), rel=1e-12)
    assert up.denominator == pytest.approx(-W_S, rel=1e-15)
    # two rocking quanta and one stretch quantum up: zeta sqrt(4*3*4)
    diag = channels[(4, 1, 4)]
    assert diag.element == pytest.approx(ZETA * math.sqrt(48), rel=1e-12)
    assert diag.denominator == pytest.approx(-W_S - 2 * W_R, rel=1e-15)


def test_channel_table_vs_published_forms():
    """Eight of the ten closed-form rows match the engine; rows 5 and 10
    match only after correcting their occupation factors."""
    state = FockState(2, 1, 3)
    channels = {tuple(c.intermediate): c for c in cubic_channels(2, 1, 3, R, XI)}
    mismatched = []
    for row, (dx, dy, ds) in ROW_DELTAS.items():
        target = (2 + dx, 1 + dy, 3 + ds)
        engine = channels[target].element if target in channels else 0.0
        printed = published_element(row, state, R, XI, corrected=False)
        corrected = published_element(row, state, R, XI, corrected=True)
        assert engine == pytest.approx(corrected, rel=1e-12, abs=1e-18), row
        if abs(engine - printed) > 1e-12 * ZETA:
            mismatched.append(row)
        if target in channels:
            assert channels[target].denominator == channel_denominator(row, R)
    assert mismatched == [5, 10]


def test_row_flags_on_engine_channels():
    rows = {c.row for c in cubic_channels(2, 1, 3, R, XI)}
    assert None in rows  # the pure-stretch third-harmonic channels
    assert rows - {None} <= set(ROW_DELTAS)


# -- the coefficient ------------------------------------------------------------------

def test_engine_shift_matches_brute_force_reference():
    _, v3, v4 = build_operators(R, XI)
    e0 = harmonic_energy(R)
    for state in (FockState(0, 0, 0), FockState(1, 0, 0),
                  FockState(0, 0, 1), FockState(1, 0, 1)):
        engine = (first_order_shift(v4, state)
                  + second_order_shift(v3, state, e0).second_order)
        brute = reference.brute_force_shift(R, XI, (10, 6, 10), tuple(state))
        assert engine == pytest.approx(brute, rel=1e-12)


def test_kerr_coefficient_matches_closed_form_random():
    rng = np.random.default_rng(17)
    count = 0
    while count < 50:
        r = rng.uniform(1.2, 20.0)
        if abs(4 * (r * r - 1) - 3) < 1e-3:
            continue
        xi = 10 ** rng.uniform(-6, -3)
        engine = kerr_coefficient_pt(r, xi)
        closed = chi_over_omega_z(r, xi)
        assert engine == pytest.approx(closed, rel=1e-10)
        count += 1


def test_kerr_coefficient_linear_in_xi():
    base = kerr_coefficient_pt(R, XI)
    assert kerr_coefficient_pt(R, 2 * XI) == pytest.approx(2 * base, rel=5e-16)
    # powers of four rescale the coupling by an exact power of two,
    # so the proportionality there is bit-exact
    assert kerr_coefficient_pt(R, 4 * XI) == 4 * base


def test_kerr_coefficient_value_at_r5():
    assert kerr_coefficient_pt(R, XI) / XI == pytest.approx(
        -math.sqrt(3 / 24) * (0.5 + 1.5 / 93), rel=1e-12)
