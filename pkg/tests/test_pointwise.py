import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import random_data, scalar_march_pointwise
from switchwave.grid import InitialData, make_grid, preset_initial
from switchwave.pointwise import (energy_pointwise, energy_series_pointwise, extend_pointwise,
                                  pointwise_state, reconstruct_pointwise, state_vector,
                                  transmission_residuals)
from switchwave.spectral import eigenvector_conditioning, pointwise_matrix, pointwise_spectral_radius


def sine_state(a, n=64, ell=1.0):
    g = make_grid(ell, n)
    return pointwise_state(preset_initial("sine", g), g, a)


def test_zero_data_stays_zero(grid16):
    st_ = pointwise_state(preset_initial("zero", grid16), grid16, 1.3)
    extend_pointwise(st_, 20)
    assert not st_.trace_minus.values.any() and not st_.trace_plus.values.any()
    assert energy_pointwise(st_, 7.0) == 0.0
    assert transmission_residuals(st_, 5.0) == (0.0, 0.0)
    assert reconstruct_pointwise(st_, 0.25, 3.0) == (0.0, 0.0, 0.0)


@pytest.mark.parametrize("a", [0.0, 1.0, 1.7, -0.4])
def test_block_march_matches_scalar_reference(a):
    g = make_grid(1.0, 8)
    data = random_data(g, 3)
    st_ = pointwise_state(data, g, a)
    am0 = st_.trace_minus.values[: 2 * 8].copy()
    ap0 = st_.trace_plus.values[: 2 * 8].copy()
    extend_pointwise(st_, 13.37)
    count = st_.trace_minus.frontier + 1
    ref_m, ref_p = scalar_march_pointwise(am0, ap0, 8, a, count)
    np.testing.assert_array_equal(st_.trace_minus.values, ref_m)
    np.testing.assert_array_equal(st_.trace_plus.values, ref_p)


def test_extension_is_incremental():
    g = make_grid(1.0, 8)
    one = pointwise_state(random_data(g, 1), g, 0.9)
    extend_pointwise(one, 30)
    two = pointwise_state(random_data(g, 1), g, 0.9)
    for t in (0.3, 2.7, 2.7, 11.0, 30):
        prefix = two.trace_minus.values.copy()
        extend_pointwise(two, t)
        np.testing.assert_array_equal(two.trace_minus.values[: prefix.size], prefix)
    np.testing.assert_array_equal(one.trace_plus.values, two.trace_plus.values)


def test_t_max_tracks_frontier():
    st_ = sine_state(1.0, n=16)
    extend_pointwise(st_, 4.0)
    assert st_.t_max == pytest.approx(4.0)
    energy_pointwise(st_, 4.0)
    with pytest.raises(ValueError):
        energy_pointwise(st_, 4.0 + st_.grid.h)


def test_state_vector_one_step_identity():
    a = 1.3
    st_ = sine_state(a, n=16)
    extend_pointwise(st_, 12)
    m = pointwise_matrix(a)
    g = st_.grid
    for y in np.arange(3.5, 12.0, 7 * g.h):
        y = round(y / g.h) * g.h
        c, c_prev = state_vector(st_, y), state_vector(st_, y - 1.0)
        np.testing.assert_allclose(c, m @ c_prev, rtol=0, atol=1e-12 * max(1, np.abs(c_prev).max()))
        k = st_.index(y)
        assert c[1] == st_.trace_plus.at(k) and c[3] == st_.trace_plus.at(k - 4 * g.n_per_half)


@pytest.mark.parametrize("a", [0.3, 1.0, 1.8])
def test_iterate_bound_with_measured_conditioning(a):
    st_ = sine_state(a, n=16)
    extend_pointwise(st_, 40)
    rho = pointwise_spectral_radius(a)
    c_a = eigenvector_conditioning(pointwise_matrix(a))
    base_y = 3.0
    base = np.linalg.norm(state_vector(st_, base_y))
    for j in range(1, 36):
        assert np.linalg.norm(state_vector(st_, base_y + j)) <= c_a * rho**j * base * (1 + 1e-9)


def test_sine_energy_at_zero():
    assert energy_pointwise(sine_state(1.0), 0.0) == pytest.approx(math.pi**2 / 16, rel=1e-4)


def test_energy_equals_field_energy():
    """Trace energy against 0.5 * int (u_t^2 + u_x^2) from reconstructed fields."""
    st_ = sine_state(0.8, n=32)
    extend_pointwise(st_, 6)
    g = st_.grid
    for t in (0.0, 1.25, 3.5, 5.0):
        f = []
        for x in g.x_nodes():
            side = "minus" if x < 0.5 else "plus"
            _, ut, ux = reconstruct_pointwise(st_, x, t, side=side)
            f.append(ut * ut + ux * ux)
        # field is discontinuous in u_x at l/2; integrate each half separately
        f = np.array(f)
        _, ut_m, ux_m = reconstruct_pointwise(st_, 0.5, t, side="minus")
        left = np.append(f[: g.n_per_half], ut_m**2 + ux_m**2)
        right = f[g.n_per_half:]
        e_field = 0.5 * (np.trapezoid(left, dx=g.h) + np.trapezoid(right, dx=g.h))
        assert energy_pointwise(st_, t) == pytest.approx(e_field, rel=1e-12, abs=1e-15)


def test_conservation_without_damping():
    st_ = sine_state(0.0)
    t, e = energy_series_pointwise(st_, 40.0)
    assert np.max(np.abs(e - e[0])) / e[0] <= 1e-6


def test_energy_series_matches_pointwise_calls():
    st_ = sine_state(1.2, n=16)
    t, e = energy_series_pointwise(st_, 9.0, stride=5)
    for ti, ei in zip(t[::7], e[::7]):
        assert ei == pytest.approx(energy_pointwise(st_, ti), rel=1e-12, abs=1e-300)


def test_decay_example_a1():
    st_ = sine_state(1.0)
    extend_pointwise(st_, 50)
    assert energy_pointwise(st_, 50.0) / energy_pointwise(st_, 0.0) <= 1e-6


def test_boundary_conditions_hold():
    st_ = sine_state(1.1, n=32)
    extend_pointwise(st_, 10)
    for t in np.arange(0, 10, 0.40625):
        u0, _, _ = reconstruct_pointwise(st_, 0.0, t)
        _, _, ux_end = reconstruct_pointwise(st_, 1.0, t)
        assert u0 == 0.0
        assert abs(ux_end) <= 1e-12


def test_transmission_residuals():
    st_ = sine_state(1.0)
    extend_pointwise(st_, 10)
    g = st_.grid
    for t in np.arange(3.0 + g.h, 10.0, 13 * g.h):
        t = round(t / g.h) * g.h
        cont, jump = transmission_residuals(st_, t)
        assert jump <= 1e-10
        assert cont <= 1e-4  # O(h^2) quadrature on two independent routes
    with pytest.raises(ValueError):
        transmission_residuals(st_, 2.0)


def test_reconstruction_rejects_off_grid():
    st_ = sine_state(1.0, n=4)
    with pytest.raises(ValueError):
        reconstruct_pointwise(st_, 0.1, 0.0)
    with pytest.raises(ValueError):
        reconstruct_pointwise(st_, 1.5, 0.0)


def test_reconstructed_initial_data():
    g = make_grid(1.0, 32)
    data = preset_initial("sine", g)
    st_ = pointwise_state(data, g, 0.5)
    for i in (0, 10, 32, 50, 64):
        x = i * g.h
        u, ut, ux = reconstruct_pointwise(st_, x, 0.0)
        assert ut == pytest.approx(0.0, abs=1e-14)
        assert ux == pytest.approx(data.u0_prime[i], abs=1e-14)
        assert u == pytest.approx(math.sin(math.pi * x / 2), abs=1e-4)


@settings(max_examples=25, deadline=None)
@given(st.floats(-3, 3), st.floats(-3, 3), st.floats(0, 2), st.integers(0, 10_000))
def test_linearity(c1, c2, a, seed):
    g = make_grid(1.0, 4)
    d1, d2 = random_data(g, seed), random_data(g, seed + 1)
    mix = InitialData(c1 * d1.u0_prime + c2 * d2.u0_prime, c1 * d1.u1 + c2 * d2.u1)
    s1, s2, s3 = (pointwise_state(d, g, a) for d in (d1, d2, mix))
    for s in (s1, s2, s3):
        extend_pointwise(s, 15)
    want = c1 * s1.trace_minus.values + c2 * s2.trace_minus.values
    scale = max(1.0, np.abs(want).max())
    np.testing.assert_allclose(s3.trace_minus.values, want, rtol=0, atol=1e-12 * scale)
