"""
One training run, layer by layer
================================

Joint search probes the four child pairs of the current codeword pair at
every layer; direction-wise search finishes one axis before starting the
other.  Both use ``4 S`` probes on a square array.
"""

import math

from irsbeam import ChannelRealization, CascadedDirection, build_codebook, dws_train, js_train
from irsbeam.training import trial_rng

cb = build_codebook(32)
ch = ChannelRealization(CascadedDirection(0.71, -1.33))

for name, run in (("JS", lambda rng: js_train(cb, ch, 10.0, rng)),
                  ("DWS", lambda rng: dws_train(cb, cb, ch, 10.0, rng))):
    out = run(trial_rng(3, 0))
    print(f"{name}: {out.measurements_used} probes, misaligned={out.misaligned}")
    for step in out.steps:
        best = max(step.powers)
        print(f"  {step.stage:5s} layer {step.layer}: picked {step.selected}"
              f"  ({10 * math.log10(best):.1f} dB)")
