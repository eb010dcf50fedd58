import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from irsbeam.array_factor import (AfmSample, PhaseProfile, afm_1d, afm_1d_norm, afm_2d,
                                  afm_2d_double_sum, afm_grid, afm_grid_values, band_mask,
                                  beta_grid, in_band_ratio)
from irsbeam.geometry import CascadedDirection
from irsbeam.synthesis import narrow_profile, ncpd_flat

from oracles import afm_fft, afm_loop

profiles = st.lists(st.floats(-100, 100), min_size=1, max_size=40)
betas = st.floats(-2, 2)

# Regression constants, computed once with afm_fft and frozen.
FLAT64_AT_M15 = 5.605063087764203e-17
FLAT64_IN_MEAN_OVER_OUT_MAX = 4.692310383390747


def test_profile_is_referenced_and_readonly():
    p = PhaseProfile([3.0, 2.0, 5.0])
    np.testing.assert_array_equal(p.values, [0.0, -1.0, 2.0])
    with pytest.raises(ValueError):
        p.values[1] = 4.0
    assert not math.copysign(1.0, PhaseProfile([-0.0, 1.0]).values[0]) < 0


def test_profile_validation():
    with pytest.raises(ValueError):
        PhaseProfile([])
    with pytest.raises(ValueError):
        PhaseProfile([0.0, float("inf")])
    with pytest.raises(ValueError):
        PhaseProfile([0.0], axis="diag")


def test_profile_equality_and_hash():
    a, b = PhaseProfile([0, 1, 2]), PhaseProfile([1, 2, 3])
    assert a == b and hash(a) == hash(b)
    assert a != a.with_axis("ver")
    np.testing.assert_allclose(np.abs(a.coefficients()), 1.0)


@pytest.mark.parametrize("n", [1, 5, 32])
def test_zero_profile_peaks_at_broadside(n):
    assert afm_1d(np.zeros(n), 0.0) == pytest.approx(n)


def test_two_elements_cancel_at_band_edge():
    assert afm_1d(np.zeros(2), 2.0) == pytest.approx(0.0, abs=1e-15)


def test_single_element_is_always_one():
    for beta in (-2.0, -0.3, 1.7):
        assert afm_1d_norm([4.2], beta) == 1.0


@pytest.mark.parametrize("psi0", [-1.9, -0.37, 0.0, 1.25])
def test_narrow_profile_hits_full_gain(psi0):
    assert afm_1d_norm(narrow_profile(psi0, 256), psi0) == pytest.approx(1.0, abs=1e-12)


def test_beta_outside_domain_rejected():
    with pytest.raises(ValueError):
        afm_1d(np.zeros(4), 2.1)


def test_flat_beam_out_of_band_level():
    p = ncpd_flat(0, 1, 64)
    assert afm_1d_norm(p, -1.5) == pytest.approx(FLAT64_AT_M15, abs=1e-15)
    beta, v = afm_grid_values(p)
    inside = v[band_mask(beta, 0, 1, 0.9)]
    outside = v[(beta < -0.2) | (beta > 1.2)]
    assert inside.mean() / outside.max() == pytest.approx(FLAT64_IN_MEAN_OVER_OUT_MAX, rel=1e-9)


@pytest.mark.parametrize("n", [3, 64, 1000, 5000])
def test_grid_matches_fft_oracle(n):
    rng = np.random.default_rng(n)
    g = rng.uniform(-20, 20, n)
    beta, ref = afm_fft(g)
    b, v = afm_grid_values(g)
    np.testing.assert_allclose(b, beta, atol=1e-15)
    np.testing.assert_allclose(v * n, ref, atol=1e-9 * n)


@settings(max_examples=60)
@given(profiles, betas)
def test_matches_loop_oracle(g, beta):
    assert afm_1d(g, beta) == pytest.approx(afm_loop(g, beta), rel=1e-9, abs=1e-9)


@given(profiles, betas)
def test_normalised_afm_is_bounded(g, beta):
    assert 0.0 <= afm_1d_norm(g, beta) <= 1 + 1e-9


@given(profiles)
def test_period_four_wrap(g):
    assert afm_1d(g, -2.0) == pytest.approx(afm_1d(g, 2.0), rel=1e-9, abs=1e-9)


@settings(max_examples=40)
@given(profiles, profiles, betas, betas)
def test_product_form_matches_double_sum(gh, gv, bh, bv):
    d = CascadedDirection(bh, bv)
    ref = afm_2d_double_sum(gh, gv, d)
    assert afm_2d(gh, gv, d) == pytest.approx(ref, rel=1e-10, abs=1e-9)


def test_afm_2d_examples():
    z = np.zeros(4)
    assert afm_2d(z, z, CascadedDirection(0, 0)) == pytest.approx(16)
    d = CascadedDirection(0.4, -1.1)
    assert afm_2d(narrow_profile(0.4, 8), narrow_profile(-1.1, 4), d) == pytest.approx(32)


def test_afm_2d_length_check():
    with pytest.raises(ValueError):
        afm_2d(np.zeros(4), np.zeros(3), CascadedDirection(0, 0), n_hor=4, n_ver=4)


@settings(max_examples=30)
@given(st.floats(-1.99, 1.99), st.integers(8, 64))
def test_steering_peak_on_grid(psi0, n):
    beta, v = afm_grid_values(narrow_profile(psi0, n))
    nearest = np.argmin(np.abs(beta - psi0))
    assert abs(beta[np.argmax(v)] - beta[nearest]) < 1e-12 or \
        v[np.argmax(v)] == pytest.approx(v[nearest], abs=1e-12)


def test_grid_endpoints_and_order():
    samples = afm_grid(np.zeros(3), grid_points=2)
    assert [s.beta for s in samples] == [-2.0, 2.0]
    assert isinstance(samples[0], AfmSample)
    with pytest.raises(ValueError):
        beta_grid(1)


def test_halving_grid_step_keeps_shared_samples():
    p = ncpd_flat(-0.5, 1.2, 100)
    _, coarse = afm_grid_values(p, grid_points=2001)
    _, fine = afm_grid_values(p, grid_points=4001)
    np.testing.assert_allclose(fine[::2], coarse, rtol=0, atol=1e-13)


def test_in_band_ratio_of_omni_beam():
    # frozen from afm_fft: 0.5653590030610202
    assert in_band_ratio(ncpd_flat(-2, 2, 256), -2, 2) == pytest.approx(0.5653590030610202, rel=1e-9)
