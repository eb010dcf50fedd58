"""Cascaded-channel geometry for a uniform planar IRS.

The BS -> IRS -> UE link is summarised by two cascaded direction
parameters ``(beta_hor, beta_ver)``, each the sum of the direction cosines
of the incident and reflected paths along one array axis.  Every function
in the package works in this beta-space.

Element indices are 0-based throughout: element ``n`` of an axis with
``N`` elements runs over ``0 .. N-1`` and the reference element ``n = 0``
carries zero phase.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

Axis = Literal["hor", "ver"]

#: Largest spacing-to-wavelength ratio free of grating lobes in beta-space.
MAX_SPACING_RATIO = 0.25

#: Half-width of the cascaded-direction domain.
BETA_MAX = 2.0


def _check_beta(beta: float, name: str = "beta") -> None:
    if not abs(beta) <= BETA_MAX:
        raise ValueError(f"{name} must lie in [-2, 2], got {beta!r}")


@dataclass(frozen=True)
class ArrayConfig:
    """Planar IRS with ``n_hor x n_ver`` elements at uniform spacing.

    Parameters
    ----------
    n_hor, n_ver : int
        Element counts along the horizontal and vertical axes.
    spacing_ratio : float
        Element spacing over wavelength, ``d / lambda``.  Values above
        1/4 alias two distinct cascaded directions onto the same array
        response and are rejected.
    """

    n_hor: int
    n_ver: int = 1
    spacing_ratio: float = MAX_SPACING_RATIO
    kd: float = field(init=False)

    def __post_init__(self):
        for name in ("n_hor", "n_ver"):
            value = getattr(self, name)
            if int(value) != value or value < 1:
                raise ValueError(f"{name} must be a positive integer, got {value!r}")
            object.__setattr__(self, name, int(value))
        if not 0 < self.spacing_ratio <= MAX_SPACING_RATIO:
            raise ValueError(
                f"spacing_ratio must lie in (0, 1/4], got {self.spacing_ratio!r}"
            )
        object.__setattr__(self, "kd", 2 * math.pi * self.spacing_ratio)

    @property
    def n_total(self) -> int:
        return self.n_hor * self.n_ver

    def count(self, axis: Axis) -> int:
        if axis == "hor":
            return self.n_hor
        if axis == "ver":
            return self.n_ver
        raise ValueError(f"axis must be 'hor' or 'ver', got {axis!r}")


@dataclass(frozen=True)
class PhysicalAngles:
    """Elevation/azimuth of the AoD (``*_r``) and AoA (``*_i``) at the IRS, in radians."""

    theta_r: float
    phi_r: float
    theta_i: float
    phi_i: float

    def __post_init__(self):
        for name in ("theta_r", "theta_i"):
            value = getattr(self, name)
            if not 0 <= value <= math.pi / 2:
                raise ValueError(f"{name} must lie in [0, pi/2], got {value!r}")
        for name in ("phi_r", "phi_i"):
            value = getattr(self, name)
            if not 0 <= value < 2 * math.pi:
                raise ValueError(f"{name} must lie in [0, 2*pi), got {value!r}")


@dataclass(frozen=True)
class CascadedDirection:
    beta_hor: float
    beta_ver: float = 0.0

    def __post_init__(self):
        _check_beta(self.beta_hor, "beta_hor")
        _check_beta(self.beta_ver, "beta_ver")

    def component(self, axis: Axis) -> float:
        return self.beta_hor if axis == "hor" else self.beta_ver


@dataclass(frozen=True)
class ChannelRealization:
    """LoS cascaded channel: a direction and the path-gain product of both hops."""

    direction: CascadedDirection
    gain: float = 1.0

    def __post_init__(self):
        if not self.gain >= 0:
            raise ValueError(f"gain must be nonnegative, got {self.gain!r}")


def cascaded_angles(angles: PhysicalAngles) -> CascadedDirection:
    """Collapse the four physical angles into the cascaded direction."""
    sr, si = math.sin(angles.theta_r), math.sin(angles.theta_i)
    beta_hor = sr * math.cos(angles.phi_r) + si * math.cos(angles.phi_i)
    beta_ver = sr * math.sin(angles.phi_r) + si * math.sin(angles.phi_i)
    # rounding can push |beta| a hair past 2 at the extremes
    return CascadedDirection(
        float(np.clip(beta_hor, -BETA_MAX, BETA_MAX)),
        float(np.clip(beta_ver, -BETA_MAX, BETA_MAX)),
    )


def steering_phase(config: ArrayConfig, direction_component: float, index: int,
                   axis: Axis = "hor") -> float:
    """Phase ``kd * beta * index`` of one cascaded-channel entry."""
    n = config.count(axis)
    if not 0 <= index < n:
        raise IndexError(f"element index {index} out of range for {n} elements")
    return config.kd * direction_component * index


def virtual_channel_1d(config: ArrayConfig, beta: float, axis: Axis = "hor") -> np.ndarray:
    """Cascaded channel along one axis, ``exp(j kd beta n)`` for ``n = 0..N-1``."""
    _check_beta(beta)
    n = np.arange(config.count(axis))
    return np.exp(1j * config.kd * beta * n)


def steering_vector(config: ArrayConfig, theta: float, phi: float) -> np.ndarray:
    """Planar-array steering vector ``d_hor (x) d_ver`` for one path."""
    st = math.sin(theta)
    hor = np.exp(1j * config.kd * st * math.cos(phi) * np.arange(config.n_hor))
    ver = np.exp(1j * config.kd * st * math.sin(phi) * np.arange(config.n_ver))
    return np.kron(hor, ver)


def virtual_channel(config: ArrayConfig, direction: CascadedDirection) -> np.ndarray:
    """Equivalent BS-UE channel ``h_hor (x) h_ver`` of length ``n_hor * n_ver``.

    Element ``(n_hor, n_ver)`` sits at flat index ``n_hor * N_ver + n_ver``.
    """
    return np.kron(
        virtual_channel_1d(config, direction.beta_hor, "hor"),
        virtual_channel_1d(config, direction.beta_ver, "ver"),
    )


def virtual_channel_from_angles(config: ArrayConfig, angles: PhysicalAngles) -> np.ndarray:
    """``diag(d) a`` built from the physical AoD/AoA steering vectors."""
    d = steering_vector(config, angles.theta_r, angles.phi_r)
    a = steering_vector(config, angles.theta_i, angles.phi_i)
    return d * a


def aliasing_partner(kd: float, beta: float, *, tol: float = 1e-12) -> list[float]:
    """Directions in [-2, 2] whose array response is indistinguishable from ``beta``.

    Returns every ``beta2 != beta`` with ``kd*beta = kd*beta2 + 2*pi*m`` for a
    nonzero integer ``m``.  At ``kd <= pi/2`` the list is empty except for the
    endpoint pair ``beta = +-2``.
    """
    _check_beta(beta)
    period = 2 * math.pi / kd
    partners = []
    m_max = int(math.ceil(2 * BETA_MAX / period)) + 1
    for m in range(-m_max, m_max + 1):
        if m == 0:
            continue
        candidate = beta - m * period
        if abs(candidate) <= BETA_MAX + tol:
            partners.append(float(np.clip(candidate, -BETA_MAX, BETA_MAX)))
    return sorted(partners)
