import numpy as np
import pytest
from scipy.signal import find_peaks

from irsbeam.array_factor import afm_grid_values, in_band_ratio
from irsbeam.codebook import build_codebook
from irsbeam.combining import (CombinationSpec, bmw_ss_codebook, bmw_ss_subbeam_count,
                               m_combination)
from irsbeam.synthesis import narrow_profile


def test_single_subbeam_is_narrow_beam():
    p = m_combination(CombinationSpec(1, 0.2, 1.0, 32))
    np.testing.assert_allclose(p.values, narrow_profile(0.6, 32).values, atol=1e-13)


def test_centers():
    np.testing.assert_allclose(CombinationSpec(4, 0, 1, 16).centers(), [1/8, 3/8, 5/8, 7/8])


@pytest.mark.parametrize("kwargs", [
    dict(m=3, psi_a=0, psi_b=1, n=16), dict(m=0, psi_a=0, psi_b=1, n=16),
    dict(m=2, psi_a=1, psi_b=0, n=16), dict(m=2, psi_a=0.5, psi_b=0.5, n=16),
    dict(m=2, psi_a=0, psi_b=1, n=16, stitching="random"),
])
def test_spec_validation(kwargs):
    with pytest.raises(ValueError):
        CombinationSpec(**kwargs)


@pytest.mark.parametrize("stitching", ["continuous", "independent"])
def test_subarray_slopes(stitching):
    p = m_combination(CombinationSpec(4, 0, 1, 64, stitching)).values
    for t, c in enumerate([1/8, 3/8, 5/8, 7/8]):
        seg = p[16 * t:16 * (t + 1)]
        np.testing.assert_allclose(np.diff(seg), -c, atol=1e-12)


def test_continuous_stitching_has_no_jump():
    p = m_combination(CombinationSpec(4, 0, 1, 64)).values
    for t in range(1, 4):
        assert p[16 * t] == p[16 * t - 1]


def test_independent_stitching_restarts():
    p = m_combination(CombinationSpec(4, 0, 1, 64, "independent")).values
    assert p[16] == p[32] == p[48] == 0.0


def test_four_subbeams_show_four_lobes():
    # at n = 64 the sub-beams are as wide as their spacing and merge; use 256
    beta, v = afm_grid_values(m_combination(CombinationSpec(4, 0, 1, 256)))
    inside = (beta > 0) & (beta < 1)
    peaks, _ = find_peaks(v[inside])
    tops = np.sort(beta[inside][peaks][np.argsort(v[inside][peaks])[-4:]])
    np.testing.assert_allclose(tops, [1/8, 3/8, 5/8, 7/8], atol=0.02)


@pytest.mark.parametrize("l, m", [(0, 1), (1, 2), (2, 2), (3, 4), (4, 4), (8, 16), (9, 32)])
def test_subbeam_count(l, m):
    assert bmw_ss_subbeam_count(l) == m


def test_codebook_subbeam_counts():
    assert bmw_ss_subbeam_count(layer_gap(256)) == 16
    assert bmw_ss_subbeam_count(layer_gap(512)) == 32


def layer_gap(n):
    return build_codebook(n).s_max - 1


@pytest.mark.parametrize("n", [4, 64])
def test_tree_matches_ncpd(n):
    a, b = build_codebook(n), bmw_ss_codebook(n)
    assert a.s_max == b.s_max
    for s in range(1, a.s_max + 1):
        assert [c.range for c in a.layer(s)] == [c.range for c in b.layer(s)]
    assert [c.profile for c in a.bottom()] == [c.profile for c in b.bottom()]


def test_unit_modulus():
    cb = bmw_ss_codebook(32)
    for cw in cb:
        np.testing.assert_allclose(np.abs(cw.profile.coefficients()), 1.0)


# Frozen in-band min/max ratios (central 90% of band (0, 1)), cross-checked with afm_fft.
RATIOS = {
    64: {"ncpd": 0.5799779397653474, "c4": 0.512624700047923, "c16": 0.11516840916125534},
    1024: {"ncpd": 0.737835856645489, "c16": 0.4780510461621557},
}


@pytest.mark.parametrize("n", [64, 1024])
def test_depression_ratios_regression(n):
    for m, key in ((4, "c4"), (16, "c16")):
        if key in RATIOS[n]:
            got = in_band_ratio(m_combination(CombinationSpec(m, 0, 1, n)), 0, 1)
            assert got == pytest.approx(RATIOS[n][key], rel=1e-9)
    c4 = in_band_ratio(m_combination(CombinationSpec(4, 0, 1, 1024)), 0, 1)
    assert c4 < 1e-12
