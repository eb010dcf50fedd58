"""
Misalignment rate versus SNR
============================

Monte Carlo estimate of how often the first decision of the hierarchical
search picks the wrong half of the band.  NCPD wide beams are compared
with the sub-array combination codebook and with an ideal indicator beam.
The same numbers come out of::

    irsbeam sweep --mode snr --snr 0:30:10 --n 256 --trials 2000 --seed 7
"""

import matplotlib.pyplot as plt

from irsbeam import misalignment_rate
from irsbeam.training import binomial_sigma

snrs = [0, 5, 10, 15, 20, 25, 30]
trials = 2000
fig, ax = plt.subplots(figsize=(6, 3.5))
for kind in ("ideal", "ncpd", "bmw-ss"):
    rates = [misalignment_rate("first-layer", kind, s, trials, 7, 256) for s in snrs]
    errs = [binomial_sigma(r, trials) for r in rates]
    print(kind, " ".join(f"{r:.4f}" for r in rates))
    ax.errorbar(snrs, rates, yerr=errs, marker="o", ms=3, capsize=2, label=kind)
ax.set_yscale("symlog", linthresh=1e-3)
ax.set_xlabel("received SNR (dB)")
ax.set_ylabel("misalignment rate")
ax.legend()
plt.tight_layout()
plt.show()
