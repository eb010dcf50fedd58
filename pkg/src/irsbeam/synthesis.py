"""Analytical phase-profile synthesis for beams of arbitrary width and shape.

A beam over the band ``[psi_a, psi_b]`` with in-band shape ``h`` is built
from a continuous, nondecreasing phase-slope function ``f`` on ``[0, 1]``:

    f(mu) = H^{-1}( (H(psi_b) - H(psi_a)) * mu + H(psi_a) ),

where ``H`` is any antiderivative of ``h``.  Element ``m`` of an ``N``
element axis then receives ``g(m) = -sum_{tau=1..m} f(tau / N)``.

For a flat shape ``f`` is linear and the profile has the closed form
``g(m) = -(m (m+1) / (2N) (psi_b - psi_a) + m psi_a)``; its phase increment
changes linearly from element to element, hence the name NCPD
(non-constant phase difference).

Note that the stationary-phase argument behind ``f`` makes the radiated
*power* in the band proportional to ``h``; the AFM itself follows
``sqrt(h)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Union

import numpy as np
from scipy import integrate
from scipy.interpolate import PchipInterpolator

from .array_factor import PhaseProfile
from .geometry import Axis, BETA_MAX


class _Flat:
    def __repr__(self):
        return "FLAT"

    def __reduce__(self):
        return "FLAT"


#: Sentinel shape for a beam with uniform in-band amplitude.
FLAT = _Flat()

Shape = Union[_Flat, Callable[[np.ndarray], np.ndarray]]

#: Bisection stops once the residual is below this fraction of ``H(psi_b) - H(psi_a)``.
INVERSION_TOL = 1e-10

_TABLE_POINTS = 2049
_MAX_BISECTIONS = 200


class InversionError(ArithmeticError):
    """Numerical inversion of the shape antiderivative did not converge."""


def _check_band(psi_a: float, psi_b: float) -> None:
    if not (-BETA_MAX <= psi_a <= BETA_MAX and -BETA_MAX <= psi_b <= BETA_MAX):
        raise ValueError(f"band ({psi_a}, {psi_b}) must lie within [-2, 2]")
    if psi_a > psi_b:
        raise ValueError(f"band is reversed: psi_a={psi_a} > psi_b={psi_b}")


@dataclass(frozen=True)
class BeamSpec:
    """Target beam: band ``[psi_a, psi_b]`` and in-band shape.

    ``shape`` is :data:`FLAT` or a vectorised callable ``h(beta) > 0``.  An
    exact ``antiderivative`` of ``h`` may be supplied to skip quadrature.
    """

    psi_a: float
    psi_b: float
    shape: Shape = FLAT
    antiderivative: Optional[Callable[[np.ndarray], np.ndarray]] = field(
        default=None, compare=False)

    def __post_init__(self):
        _check_band(self.psi_a, self.psi_b)
        if self.shape is not FLAT and not callable(self.shape):
            raise TypeError("shape must be FLAT or a callable h(beta)")

    @property
    def is_narrow(self) -> bool:
        return self.psi_a == self.psi_b

    @property
    def width(self) -> float:
        return self.psi_b - self.psi_a


class ContinuousPhaseFn:
    """Monotone map ``f: [0, 1] -> [psi_a, psi_b]``.

    Three representations share one interface: ``"constant"`` (narrow
    beam), ``"linear"`` (flat beam) and ``"tabulated"`` (general shape,
    inverted numerically).  Call with a scalar or array of ``mu``.
    """

    def __init__(self, psi_a: float, psi_b: float, kind: str,
                 H: Callable | None = None, h_lo: float = 0.0, h_hi: float = 0.0):
        self.psi_a = float(psi_a)
        self.psi_b = float(psi_b)
        self.kind = kind
        self._H = H
        self._h_lo = h_lo
        self._h_hi = h_hi

    def __repr__(self):
        return f"ContinuousPhaseFn({self.kind}, [{self.psi_a}, {self.psi_b}])"

    def __call__(self, mu):
        mu = np.asarray(mu, dtype=float)
        if self.kind == "constant":
            out = np.full(mu.shape, self.psi_a)
        elif self.kind == "linear":
            out = (self.psi_b - self.psi_a) * mu + self.psi_a
        else:
            out = self._invert(self._h_lo + (self._h_hi - self._h_lo) * mu)
        return float(out) if out.ndim == 0 else out

    def H(self, beta):
        """Antiderivative used by a tabulated function (normalised so ``H(psi_a) = 0``)."""
        if self._H is None:
            raise AttributeError(f"{self.kind} phase functions carry no antiderivative")
        return self._H(beta)

    def _invert(self, target: np.ndarray) -> np.ndarray:
        # vectorised bisection on the monotone antiderivative
        lo = np.full(target.shape, self.psi_a)
        hi = np.full(target.shape, self.psi_b)
        scale = self._h_hi - self._h_lo
        tol = INVERSION_TOL * scale
        for _ in range(_MAX_BISECTIONS):
            mid = 0.5 * (lo + hi)
            below = self._H(mid) < target
            lo = np.where(below, mid, lo)
            hi = np.where(below, hi, mid)
            if np.all(hi - lo <= 4 * np.spacing(np.maximum(abs(lo), abs(hi)))):
                break
        x = 0.5 * (lo + hi)
        # endpoints are pinned exactly
        x = np.where(target <= self._h_lo, self.psi_a, x)
        x = np.where(target >= self._h_hi, self.psi_b, x)
        resid = np.abs(self._H(x) - np.clip(target, self._h_lo, self._h_hi))
        if np.any(resid > tol):
            raise InversionError(
                f"inversion residual {resid.max():.3g} exceeds {tol:.3g}")
        return x


def _tabulate_antiderivative(h: Callable, psi_a: float, psi_b: float,
                             points: int = _TABLE_POINTS) -> Callable:
    """Cumulative integral of ``h`` by adaptive quadrature, with a monotone interpolant."""
    nodes = np.linspace(psi_a, psi_b, points)
    pieces = [
        integrate.quad(lambda x: float(h(np.asarray(x))), a, b,
                       epsabs=0.0, epsrel=1e-13, limit=200)[0]
        for a, b in zip(nodes[:-1], nodes[1:])
    ]
    cumulative = np.concatenate(([0.0], np.cumsum(pieces)))
    return PchipInterpolator(nodes, cumulative, extrapolate=True)


def _check_shape_positive(h: Callable, psi_a: float, psi_b: float) -> None:
    probe = np.linspace(psi_a, psi_b, 4097)[1:-1]
    with np.errstate(all="ignore"):
        vals = np.asarray(h(probe), dtype=float)
    vals = np.broadcast_to(vals, probe.shape)
    if not np.all(np.isfinite(vals)):
        raise ValueError("shape function must be finite on the band")
    if np.any(vals <= 0):
        raise ValueError("shape function must be strictly positive inside the band")


def solve_phase_fn(spec: BeamSpec) -> ContinuousPhaseFn:
    """Continuous phase-slope function realising ``spec``."""
    if spec.is_narrow:
        return ContinuousPhaseFn(spec.psi_a, spec.psi_b, "constant")
    if spec.shape is FLAT:
        return ContinuousPhaseFn(spec.psi_a, spec.psi_b, "linear")

    h = spec.shape
    _check_shape_positive(h, spec.psi_a, spec.psi_b)
    if spec.antiderivative is not None:
        H0 = spec.antiderivative(np.asarray(spec.psi_a))

        def H(beta, _F=spec.antiderivative, _c=H0):
            return np.asarray(_F(np.asarray(beta, dtype=float)), dtype=float) - _c
    else:
        H = _tabulate_antiderivative(h, spec.psi_a, spec.psi_b)
    h_hi = float(H(np.asarray(spec.psi_b)))
    if not h_hi > 0:
        raise InversionError("antiderivative does not increase across the band")
    return ContinuousPhaseFn(spec.psi_a, spec.psi_b, "tabulated", H=H,
                             h_lo=0.0, h_hi=h_hi)


def discretize(f: Callable, n: int, axis: Axis = "hor") -> PhaseProfile:
    """Sample a phase-slope function onto ``n`` elements.

    ``g(m) = -sum_{tau=1..m} f(tau / n)`` for ``m = 0..n-1``.  Partial sums
    are accumulated in extended precision.
    """
    if n < 1:
        raise ValueError("element count must be at least 1")
    tau = np.arange(1, n) / n
    slopes = np.asarray(f(tau), dtype=float).reshape(-1)
    partial = np.cumsum(slopes.astype(np.longdouble))
    g = -np.concatenate(([0.0], partial.astype(float)))
    return PhaseProfile(g, axis)


def ncpd_flat(psi_a: float, psi_b: float, n: int, axis: Axis = "hor") -> PhaseProfile:
    """Closed-form flat-beam (NCPD) profile covering ``[psi_a, psi_b]``."""
    _check_band(psi_a, psi_b)
    if n < 1:
        raise ValueError("element count must be at least 1")
    m = np.arange(n, dtype=float)
    g = -(m * (m + 1) / (2 * n) * (psi_b - psi_a) + m * psi_a)
    return PhaseProfile(g, axis)


def narrow_profile(psi0: float, n: int, axis: Axis = "hor") -> PhaseProfile:
    """Linear-phase pencil beam toward ``psi0``."""
    if not abs(psi0) <= BETA_MAX:
        raise ValueError(f"psi0 must lie in [-2, 2], got {psi0!r}")
    if n < 1:
        raise ValueError("element count must be at least 1")
    return PhaseProfile(-psi0 * np.arange(n, dtype=float), axis)


def synthesize(spec: BeamSpec, n: int, axis: Axis = "hor") -> PhaseProfile:
    """Phase profile for ``spec`` on ``n`` elements (solve, then discretise)."""
    return discretize(solve_phase_fn(spec), n, axis)
