"""Array factor modulus (AFM) of IRS phase profiles in cascaded-direction space.

A phase profile ``g`` is stored in "g-units": element ``n`` applies the
physical phase ``kd * g[n]``.  The 1-D AFM of a profile toward ``beta`` is

    AFM(beta) = | sum_n exp(j kd (beta n + g[n])) |,

and the planar AFM of a separable profile ``g_hor(n_h) + g_ver(n_v)`` is
the product of the two 1-D factors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .geometry import Axis, BETA_MAX, CascadedDirection, MAX_SPACING_RATIO

#: ``kd`` at the default quarter-wavelength spacing.
KD_DEFAULT = 2 * math.pi * MAX_SPACING_RATIO

# beta-by-element blocks are evaluated in chunks of roughly this many entries
_CHUNK = 1 << 22


class PhaseProfile:
    """Per-element phase of one array axis, in g-units.

    The profile is shifted so that ``values[0] == 0``; a common phase offset
    does not change any AFM.  Instances are read-only.
    """

    __slots__ = ("_values", "axis")

    def __init__(self, values: Sequence[float] | np.ndarray, axis: Axis = "hor"):
        arr = np.array(values, dtype=float).reshape(-1)
        if arr.size < 1:
            raise ValueError("a phase profile needs at least one element")
        if not np.all(np.isfinite(arr)):
            raise ValueError("phase profile values must be finite")
        if arr[0] != 0.0:
            arr = arr - arr[0]
        arr[0] = 0.0  # also clears a -0.0 reference
        arr.setflags(write=False)
        if axis not in ("hor", "ver"):
            raise ValueError(f"axis must be 'hor' or 'ver', got {axis!r}")
        self._values = arr
        self.axis = axis

    @property
    def values(self) -> np.ndarray:
        return self._values

    def __len__(self) -> int:
        return self._values.size

    def __array__(self, dtype=None, copy=None):
        return self._values if dtype is None else self._values.astype(dtype)

    def __eq__(self, other):
        if not isinstance(other, PhaseProfile):
            return NotImplemented
        return self.axis == other.axis and np.array_equal(self._values, other._values)

    def __hash__(self):
        return hash((self.axis, self._values.tobytes()))

    def __repr__(self):
        return f"PhaseProfile(n={len(self)}, axis={self.axis!r})"

    def with_axis(self, axis: Axis) -> "PhaseProfile":
        return PhaseProfile(self._values, axis)

    def coefficients(self, kd: float = KD_DEFAULT) -> np.ndarray:
        """Unit-modulus reflection coefficients ``exp(j kd g[n])``."""
        return np.exp(1j * kd * self._values)


@dataclass(frozen=True)
class AfmSample:
    beta: float
    value: float


def _as_values(profile) -> np.ndarray:
    if isinstance(profile, PhaseProfile):
        return profile.values
    return np.asarray(profile, dtype=float)


def afm_1d(profile, beta, kd: float = KD_DEFAULT):
    """Un-normalised AFM of ``profile`` toward ``beta`` (scalar or array).

    Evaluated as a direct sum in double precision, so the result for a
    scalar ``beta`` lies in ``[0, N]``.
    """
    g = _as_values(profile)
    n = np.arange(g.size)
    b = np.asarray(beta, dtype=float)
    if np.any(np.abs(b) > BETA_MAX):
        raise ValueError("beta must lie in [-2, 2]")
    flat = b.reshape(-1)
    out = np.empty(flat.size)
    step = max(1, _CHUNK // max(g.size, 1))
    for start in range(0, flat.size, step):
        blk = flat[start:start + step]
        # kd * (beta n + g) keeps exact cancellation when g = -beta n
        phase = kd * (blk[:, None] * n + g)
        out[start:start + step] = np.abs(np.exp(1j * phase).sum(axis=1))
    if b.ndim == 0:
        return float(out[0])
    return out.reshape(b.shape)


def afm_1d_norm(profile, beta, kd: float = KD_DEFAULT):
    """AFM divided by the element count; bounded by 1."""
    return afm_1d(profile, beta, kd) / len(_as_values(profile))


def afm_2d(p_hor, p_ver, direction: CascadedDirection, kd: float = KD_DEFAULT,
           n_hor: int | None = None, n_ver: int | None = None) -> float:
    """Planar AFM of a separable profile pair, as the product of 1-D factors.

    ``n_hor``/``n_ver`` optionally pin the expected axis lengths.
    """
    _check_lengths(p_hor, p_ver, n_hor, n_ver)
    return (afm_1d(p_hor, direction.beta_hor, kd)
            * afm_1d(p_ver, direction.beta_ver, kd))


def afm_2d_double_sum(p_hor, p_ver, direction: CascadedDirection,
                      kd: float = KD_DEFAULT) -> float:
    """Planar AFM by the full double sum over all ``N_hor * N_ver`` elements."""
    gh, gv = _as_values(p_hor), _as_values(p_ver)
    nh, nv = np.arange(gh.size), np.arange(gv.size)
    phase = kd * ((direction.beta_hor * nh + gh)[:, None]
                  + (direction.beta_ver * nv + gv)[None, :])
    return float(np.abs(np.exp(1j * phase).sum()))


def _check_lengths(p_hor, p_ver, n_hor, n_ver):
    for prof, expected, name in ((p_hor, n_hor, "horizontal"), (p_ver, n_ver, "vertical")):
        if expected is not None and len(_as_values(prof)) != expected:
            raise ValueError(
                f"{name} profile has {len(_as_values(prof))} elements, expected {expected}"
            )


def beta_grid(grid_points: int) -> np.ndarray:
    """``grid_points`` equally spaced directions covering [-2, 2] inclusive."""
    if grid_points < 2:
        raise ValueError("grid_points must be at least 2")
    return np.linspace(-BETA_MAX, BETA_MAX, int(grid_points))


def afm_grid_values(profile, kd: float = KD_DEFAULT, grid_points: int = 4001):
    """Return ``(beta, afm_norm)`` arrays on the uniform grid."""
    beta = beta_grid(grid_points)
    return beta, afm_1d_norm(profile, beta, kd)


def afm_grid(profile, kd: float = KD_DEFAULT, grid_points: int = 4001) -> list[AfmSample]:
    """Normalised AFM sampled on a uniform closed grid, ascending in beta."""
    beta, values = afm_grid_values(profile, kd, grid_points)
    return [AfmSample(float(b), float(v)) for b, v in zip(beta, values)]


def band_mask(beta: np.ndarray, psi_a: float, psi_b: float,
              keep: float = 1.0) -> np.ndarray:
    """Select grid points inside the central ``keep`` fraction of ``[psi_a, psi_b]``."""
    trim = 0.5 * (1.0 - keep) * (psi_b - psi_a)
    lo, hi = psi_a + trim, psi_b - trim
    eps = 1e-12
    return (beta >= lo - eps) & (beta <= hi + eps)


def in_band_ratio(profile, psi_a: float, psi_b: float, kd: float = KD_DEFAULT,
                  grid_points: int = 4001, keep: float = 0.9) -> float:
    """Min/max of the normalised AFM over the central part of a band.

    Values near 1 mean a flat main lobe; values near 0 flag a deep
    depression inside the band.
    """
    beta, values = afm_grid_values(profile, kd, grid_points)
    inside = values[band_mask(beta, psi_a, psi_b, keep)]
    return float(inside.min() / inside.max())
