"""Beam-combination baselines for wide beams.

The array is cut into ``m`` equal sub-arrays; sub-array ``t`` forms a
pencil beam toward the centre of the ``t``-th of ``m`` equal sub-bands.
How the sub-arrays are phased against each other is a free choice:

``"continuous"``
    each sub-array starts at the phase where the previous one ended, so
    ``g`` has no jump at the boundaries (default);
``"independent"``
    each sub-array is referenced to its own leading element with zero
    offset.

The BMW-SS hierarchical codebook uses ``2**floor((l + 1) / 2)`` sub-beams
for a wide layer ``l`` layers above the bottom.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

from .array_factor import PhaseProfile
from .codebook import HierarchicalCodebook, layer_count
from .geometry import Axis, BETA_MAX

Stitching = Literal["continuous", "independent"]


@dataclass(frozen=True)
class CombinationSpec:
    m: int
    psi_a: float
    psi_b: float
    n: int
    stitching: Stitching = "continuous"

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("sub-array count must be at least 1")
        if self.n < 1 or self.n % self.m:
            raise ValueError(f"{self.m} sub-arrays do not divide {self.n} elements")
        if not (-BETA_MAX <= self.psi_a <= self.psi_b <= BETA_MAX):
            raise ValueError(f"band ({self.psi_a}, {self.psi_b}) must be ordered within [-2, 2]")
        if self.m > 1 and self.psi_a == self.psi_b:
            raise ValueError("a zero-width band cannot be split into sub-beams")
        if self.stitching not in ("continuous", "independent"):
            raise ValueError(f"unknown stitching {self.stitching!r}")

    def centers(self) -> np.ndarray:
        t = np.arange(self.m)
        return self.psi_a + (t + 0.5) * (self.psi_b - self.psi_a) / self.m


def m_combination(spec: CombinationSpec, axis: Axis = "hor") -> PhaseProfile:
    """Wide beam made of ``spec.m`` sub-array pencil beams."""
    size = spec.n // spec.m
    local = np.arange(size, dtype=float)
    g = np.empty(spec.n)
    offset = 0.0
    for t, c in enumerate(spec.centers()):
        if t and spec.stitching == "continuous":
            offset = g[t * size - 1]
        g[t * size:(t + 1) * size] = offset - c * local
    return PhaseProfile(g, axis)


def bmw_ss_subbeam_count(l: int) -> int:
    """Sub-beams per wide codeword ``l`` layers above the bottom."""
    if l < 0:
        raise ValueError("layer distance must be nonnegative")
    return 2 ** ((l + 1) // 2)


def bmw_ss_codebook(n: int, axis: Axis = "hor",
                    stitching: Stitching = "continuous") -> HierarchicalCodebook:
    """BMW-SS style codebook: same tree and bottom layer as NCPD, combined wide beams."""
    s_max = layer_count(n)

    def wide(layer, index, psi_a, psi_b):
        m = bmw_ss_subbeam_count(s_max - layer)
        return m_combination(CombinationSpec(m, psi_a, psi_b, n, stitching), axis)

    return HierarchicalCodebook(n, wide, kind="bmw-ss", axis=axis,
                                meta={"stitching": stitching})
