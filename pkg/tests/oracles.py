"""Independent reference computations used to check the library."""

import numpy as np


def afm_fft(g, kd=np.pi / 2, grid_points=4001):
    """Un-normalised AFM on the uniform [-2, 2] grid via an inverse FFT.

    Only valid at kd = pi/2, where the grid step 4/(grid_points-1) maps to
    bin spacing 2*pi/L with L = grid_points - 1.
    """
    g = np.asarray(g, dtype=float)
    L = grid_points - 1
    c = np.zeros(L, complex)
    np.add.at(c, np.arange(g.size) % L, np.exp(1j * kd * g))
    spec = np.fft.ifft(c) * L
    k = np.arange(-(L // 2), L // 2 + 1)
    return 4.0 * k / L, np.abs(spec[k % L])


def afm_loop(g, beta, kd=np.pi / 2):
    """Plain Python sum, one element at a time."""
    total = 0j
    for n, gn in enumerate(g):
        total += np.exp(1j * kd * (beta * n + gn))
    return abs(total)


def ncpd_closed_form(psi_a, psi_b, n):
    return [-(m * (m + 1) / (2 * n) * (psi_b - psi_a) + m * psi_a) for m in range(n)]
