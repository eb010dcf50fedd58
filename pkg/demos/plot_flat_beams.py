"""
Flat wide beams: NCPD against sub-array combination
====================================================

A wide beam over the band (0, 1) can be made by splitting the array into
sub-arrays that each point a pencil beam at part of the band, or by the
NCPD profile whose phase increment grows linearly along the array.  At
small sizes the two look alike.  As the array grows the sub-beams narrow
and holes open between them.
"""

import matplotlib.pyplot as plt

from irsbeam import CombinationSpec, afm_grid_values, in_band_ratio, m_combination, ncpd_flat

###############################################################################
# Build the three profiles for two array sizes and plot the normalised AFM.

fig, axes = plt.subplots(1, 2, figsize=(10, 3.5), sharey=True)
for ax, n in zip(axes, (64, 1024)):
    profiles = {
        "NCPD": ncpd_flat(0, 1, n),
        "4 sub-arrays": m_combination(CombinationSpec(4, 0, 1, n)),
        "16 sub-arrays": m_combination(CombinationSpec(16, 0, 1, n)),
    }
    for label, prof in profiles.items():
        beta, v = afm_grid_values(prof)
        ax.plot(beta, v, lw=0.8, label=label)
        print(f"N={n:5d} {label:14s} in-band min/max = {in_band_ratio(prof, 0, 1):.3f}")
    ax.set_xlim(-0.5, 1.5)
    ax.set_title(f"N = {n}")
    ax.set_xlabel("beta")
axes[0].set_ylabel("normalised AFM")
axes[0].legend()

###############################################################################
# With 64 elements the four-way split is the flatter combination.  With 1024
# elements each of the four sub-beams is so narrow that the AFM drops to
# zero between them, while NCPD only gets flatter.

plt.tight_layout()
plt.show()
