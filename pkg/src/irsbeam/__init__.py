"""Beam synthesis and hierarchical beam training for intelligent reflecting surfaces.

The library works in cascaded-direction space ``beta in [-2, 2]``.  Phase
profiles are synthesised for flat or shaped wide beams (NCPD) or for
sub-array combinations, assembled into binary-tree codebooks, and scored by
Monte Carlo beam-training simulation.
"""

__version__ = "0.1.0"

from .array_factor import (AfmSample, PhaseProfile, afm_1d, afm_1d_norm, afm_2d,
                           afm_grid, afm_grid_values, beta_grid, in_band_ratio)
from .codebook import (Codeword, HierarchicalCodebook, build_codebook, child_indices,
                       codeword_range, layer_count, omni_codeword, true_index)
from .combining import CombinationSpec, bmw_ss_codebook, m_combination
from .geometry import (ArrayConfig, CascadedDirection, ChannelRealization, PhysicalAngles,
                       aliasing_partner, cascaded_angles, virtual_channel)
from .synthesis import (FLAT, BeamSpec, ContinuousPhaseFn, InversionError, discretize,
                        narrow_profile, ncpd_flat, solve_phase_fn, synthesize)
from .training import (SnrSpec, TrainingOutcome, TrainingStep, dws_complexity, dws_train,
                       hybrid_train, js_complexity, js_train, misalignment_rate)

__all__ = [
    "AfmSample", "ArrayConfig", "BeamSpec", "CascadedDirection", "ChannelRealization",
    "CombinationSpec", "ContinuousPhaseFn", "Codeword", "FLAT", "HierarchicalCodebook",
    "InversionError", "PhaseProfile", "PhysicalAngles", "SnrSpec", "TrainingOutcome",
    "TrainingStep", "afm_1d", "afm_1d_norm", "afm_2d", "afm_grid", "afm_grid_values",
    "aliasing_partner", "beta_grid", "bmw_ss_codebook", "build_codebook",
    "cascaded_angles", "child_indices", "codeword_range", "discretize", "dws_complexity",
    "dws_train", "hybrid_train", "in_band_ratio", "js_complexity", "js_train",
    "layer_count", "m_combination", "misalignment_rate", "narrow_profile", "ncpd_flat",
    "omni_codeword", "solve_phase_fn", "synthesize", "true_index", "virtual_channel",
]
