"""
Shaped beams
============

Any positive in-band shape ``h`` can be requested.  Here ``h(beta) = beta``
on (0.5, 1) gives a trapezoid-like beam.  The stationary-phase argument
behind the synthesis makes the radiated power follow ``h``, so the AFM
itself follows ``sqrt(h)``.
"""

import matplotlib.pyplot as plt
import numpy as np

from irsbeam import BeamSpec, afm_grid_values, synthesize
from irsbeam.shape_expr import parse_shape

n = 4096
prof = synthesize(BeamSpec(0.5, 1.0, parse_shape("beta")), n)
beta, v = afm_grid_values(prof)

inside = (beta > 0.525) & (beta < 0.975)
power_ratio = v[inside] ** 2 / beta[inside]
print("power / h    : relative std", power_ratio.std() / power_ratio.mean())
amp_ratio = v[inside] / beta[inside]
print("amplitude / h: relative std", amp_ratio.std() / amp_ratio.mean())

###############################################################################
# Compare the realised power with the requested shape, scaled to match in
# the middle of the band.

scale = np.median(power_ratio)
fig, ax = plt.subplots(figsize=(6, 3.5))
ax.plot(beta, v ** 2, lw=0.8, label="|AFM|^2 / N^2")
ax.plot(beta[inside], scale * beta[inside], "k--", label="scaled h(beta)")
ax.set_xlim(0.3, 1.2)
ax.set_xlabel("beta")
ax.legend()
plt.tight_layout()
plt.show()
