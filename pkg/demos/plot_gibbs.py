"""
Ripple at the band edges
========================

A flat beam is a discontinuous target, so a finite array overshoots near
the band edges much like a truncated Fourier series.  The overshoot stays
near 17% of the in-band level as N grows; its peak moves toward the edge
roughly like ``1 / sqrt(N)``.
"""

import matplotlib.pyplot as plt
import numpy as np

from irsbeam import afm_grid_values, ncpd_flat
from irsbeam.array_factor import band_mask

fig, ax = plt.subplots(figsize=(7, 3.5))
for n in (1000, 4000, 10_000):
    beta, v = afm_grid_values(ncpd_flat(0, 1, n), grid_points=40_001)
    median = np.median(v[band_mask(beta, 0, 1, 0.9)])
    near = (beta >= 0) & (beta <= 0.1)
    k = np.argmax(v[near])
    print(f"N={n:6d}  overshoot {100 * (v[near][k] / median - 1):.1f}%"
          f"  at beta={beta[near][k]:.4f}")
    ax.plot(beta, v / median, lw=0.7, label=f"N = {n}")
ax.set_xlim(-0.05, 0.2)
ax.set_xlabel("beta")
ax.set_ylabel("AFM / interior median")
ax.legend()
plt.tight_layout()
plt.show()
