import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from irsbeam.array_factor import afm_1d_norm
from irsbeam.shape_expr import parse_shape
from irsbeam.synthesis import (FLAT, BeamSpec, ContinuousPhaseFn, InversionError,
                               discretize, narrow_profile, ncpd_flat, solve_phase_fn,
                               synthesize)

from oracles import ncpd_closed_form

bands = st.tuples(st.floats(-2, 2), st.floats(-2, 2)).map(sorted)


def test_flat_unit_band_is_identity():
    f = solve_phase_fn(BeamSpec(0.0, 1.0))
    mu = np.linspace(0, 1, 11)
    np.testing.assert_allclose(f(mu), mu)


def test_linear_shape_inverts_to_square_root():
    f = solve_phase_fn(BeamSpec(0.5, 1.0, lambda b: b))
    mu = np.linspace(0, 1, 101)
    np.testing.assert_allclose(f(mu), np.sqrt(0.75 * mu + 0.25), atol=1e-10)
    assert f(0.0) == 0.5 and f(1.0) == 1.0


def test_exact_antiderivative_path():
    spec = BeamSpec(0.5, 1.0, lambda b: b, antiderivative=lambda b: b ** 2 / 2)
    f = solve_phase_fn(spec)
    mu = np.linspace(0, 1, 33)
    np.testing.assert_allclose(f(mu), np.sqrt(0.75 * mu + 0.25), atol=1e-10)


def test_narrow_spec_is_constant():
    f = solve_phase_fn(BeamSpec(0.7, 0.7))
    assert f.kind == "constant"
    np.testing.assert_array_equal(f(np.linspace(0, 1, 5)), 0.7)


@pytest.mark.parametrize("shape", [lambda b: 1 + b ** 2, lambda b: np.exp(b), lambda b: 3.0 - b])
@pytest.mark.parametrize("band", [(-1.5, 0.2), (0.1, 1.9)])
def test_boundary_and_monotone(shape, band):
    f = solve_phase_fn(BeamSpec(*band, shape))
    assert f(0.0) == pytest.approx(band[0], abs=1e-10)
    assert f(1.0) == pytest.approx(band[1], abs=1e-10)
    vals = f(np.linspace(0, 1, 10_000))
    assert np.all(np.diff(vals) >= 0)


def test_nonpositive_shape_rejected():
    with pytest.raises(ValueError):
        solve_phase_fn(BeamSpec(-1.0, 1.0, lambda b: b))
    with pytest.raises(TypeError):
        BeamSpec(0.0, 1.0, shape="beta")


def test_inversion_failure_reported():
    # a bogus antiderivative that never reaches the target values
    spec = BeamSpec(0.0, 1.0, lambda b: 1.0 + 0 * b,
                    antiderivative=lambda b: np.where(b < 1.0, 0.1 * b, b))
    with pytest.raises(InversionError):
        solve_phase_fn(spec)(np.linspace(0, 1, 9))


@pytest.mark.parametrize("band", [(3.0, 0.0), (0.5, 0.2)])
def test_band_validation(band):
    with pytest.raises(ValueError):
        BeamSpec(*band)


def test_discretize_examples():
    np.testing.assert_allclose(discretize(lambda mu: mu, 4).values, [0, -0.25, -0.75, -1.5])
    np.testing.assert_allclose(discretize(ContinuousPhaseFn(0.3, 0.3, "constant"), 6).values,
                               -0.3 * np.arange(6))
    assert len(discretize(lambda mu: mu, 1)) == 1


def test_omni_closed_form():
    np.testing.assert_allclose(ncpd_flat(-2, 2, 4).values, [0, 1, 1, 0])


@pytest.mark.parametrize("n", [1, 7, 64, 1000])
def test_closed_form_matches_oracle(n):
    np.testing.assert_allclose(ncpd_flat(-0.3, 1.4, n).values,
                               ncpd_closed_form(-0.3, 1.4, n), rtol=0, atol=1e-9)


@settings(max_examples=40)
@given(bands, st.sampled_from([1, 7, 64, 1000]))
def test_closed_form_equals_generic_pipeline(band, n):
    a, b = band
    generic = synthesize(BeamSpec(a, b, FLAT), n)
    assert np.max(np.abs(generic.values - ncpd_flat(a, b, n).values)) <= 1e-12


@given(st.floats(-2, 2), st.integers(1, 50))
def test_zero_width_collapses_to_narrow(psi0, n):
    np.testing.assert_allclose(ncpd_flat(psi0, psi0, n).values, narrow_profile(psi0, n).values,
                               atol=1e-12)


def test_narrow_profile_examples():
    np.testing.assert_array_equal(narrow_profile(0.0, 5).values, 0.0)
    assert afm_1d_norm(narrow_profile(1.0, 8), 1.0) == pytest.approx(1.0, abs=1e-15)
    with pytest.raises(ValueError):
        narrow_profile(2.5, 4)


def test_shape_expression_pipeline():
    a = synthesize(BeamSpec(0.5, 1.0, parse_shape("beta")), 128)
    b = synthesize(BeamSpec(0.5, 1.0, lambda x: x), 128)
    np.testing.assert_allclose(a.values, b.values, atol=1e-12)


def test_shaped_power_tracks_shape():
    # power (AFM squared) follows h up to a constant across the band interior
    p = synthesize(BeamSpec(0.5, 1.0, lambda x: x), 4096)
    beta = np.linspace(0.55, 0.95, 401)
    r = afm_1d_norm(p, beta) ** 2 / beta
    assert r.std() / r.mean() < 0.1
