"""Simulated hierarchical beam training over a noisy cascaded channel.

Each probe configures the IRS with one horizontal and one vertical
codeword and measures received power ``|a + z|**2``, where ``a`` is the
noiseless received amplitude and ``z ~ CN(0, sigma^2)``.  The SNR is
referenced to the total power the aperture collects,

    sigma^2 = gain^2 * N_hor * N_ver * x_power / snr_linear,

so beamforming gain shows up as effective SNR.  Noise is independent
across probes (one unit-power pilot per codeword).

Two search schemes descend the codebook tree:

* joint search (JS) probes the 4 child pairs of both axes per layer;
* direction-wise search (DWS) first descends the horizontal axis with an
  omnidirectional vertical codeword, then descends the vertical axis with
  the chosen horizontal pencil beam.

Monte Carlo trials draw from per-trial random streams derived from
``(seed, trial)``, so results do not depend on evaluation order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Literal, Optional

import numpy as np

from .array_factor import KD_DEFAULT, afm_1d
from .codebook import (Codeword, HierarchicalCodebook, build_codebook,
                       child_indices, omni_codeword, true_index)
from .combining import bmw_ss_codebook
from .geometry import (BETA_MAX, CascadedDirection, ChannelRealization,
                       PhysicalAngles, cascaded_angles)

Scheme = Literal["first-layer", "js", "dws"]
CodebookKind = Literal["ncpd", "bmw-ss", "ideal"]


@dataclass(frozen=True)
class SnrSpec:
    """Total-aperture received SNR in dB; ``inf`` means noiseless."""

    snr_db: float

    def __post_init__(self):
        if math.isnan(self.snr_db) or self.snr_db == -math.inf:
            raise ValueError(f"invalid SNR {self.snr_db!r}")

    @property
    def linear(self) -> float:
        return 10.0 ** (self.snr_db / 10.0)

    def noise_variance(self, n_total: int, gain: float = 1.0, x_power: float = 1.0) -> float:
        if math.isinf(self.snr_db):
            return 0.0
        return gain ** 2 * n_total * x_power / self.linear


def _snr(snr) -> SnrSpec:
    return snr if isinstance(snr, SnrSpec) else SnrSpec(float(snr))


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    """Independent random stream for one Monte Carlo trial."""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(trial,)))


def received_power(ch: ChannelRealization, p_hor, p_ver, kd: float = KD_DEFAULT,
                   x_power: float = 1.0, n_hor: int | None = None,
                   n_ver: int | None = None) -> float:
    """Noiseless received power for a separable IRS configuration."""
    for prof, expected in ((p_hor, n_hor), (p_ver, n_ver)):
        if expected is not None and len(prof) != expected:
            raise ValueError(f"profile length {len(prof)} does not match {expected} elements")
    amp = (afm_1d(p_hor, ch.direction.beta_hor, kd)
           * afm_1d(p_ver, ch.direction.beta_ver, kd))
    return ch.gain ** 2 * amp ** 2 * x_power


def measure(power: float, snr, n_total: int, rng: np.random.Generator,
            gain: float = 1.0, x_power: float = 1.0) -> float:
    """Noisy power reading: amplitude-level complex Gaussian noise, then square-law."""
    if power < 0:
        raise ValueError("power must be nonnegative")
    var = _snr(snr).noise_variance(n_total, gain, x_power)
    if var == 0.0:
        return float(power)
    re, im = rng.standard_normal(2)
    z = math.sqrt(var / 2.0) * complex(re, im)
    return abs(math.sqrt(power) + z) ** 2


@dataclass(frozen=True)
class TrainingStep:
    """One layer of the search: the probed (hor, ver) index pairs and their readings.

    A vertical index of 0 denotes the omnidirectional codeword.
    """

    stage: str
    layer: int
    candidates: tuple[tuple[int, int], ...]
    powers: tuple[float, ...]
    selected: tuple[int, int]


@dataclass(frozen=True)
class TrainingOutcome:
    selected_hor: int
    selected_ver: int
    layer_hor: int
    layer_ver: int
    measurements_used: int
    misaligned: bool
    steps: tuple[TrainingStep, ...] = field(default=())

    @property
    def trajectory(self) -> list[tuple[int, int, int]]:
        """``(layer, p, q)`` selected at each step."""
        return [(st.layer, *st.selected) for st in self.steps]


class _Link:
    """Probe a channel with codeword pairs, counting measurements."""

    def __init__(self, ch: ChannelRealization, snr: SnrSpec, n_total: int,
                 rng: np.random.Generator, kd: float, x_power: float,
                 ideal_first_layer: bool):
        self.ch = ch
        self.snr = snr
        self.n_total = n_total
        self.rng = rng
        self.kd = kd
        self.x_power = x_power
        self.ideal = ideal_first_layer
        self.count = 0

    def _amplitude(self, cw: Codeword, beta: float) -> float:
        if self.ideal and cw.layer == 1:
            # indicator beam carrying the full 2N power over its half of the band
            return math.sqrt(2 * len(cw.profile)) if cw.contains(beta) else 0.0
        return afm_1d(cw.profile, beta, self.kd)

    def probe(self, hor: Codeword, ver: Codeword) -> float:
        d = self.ch.direction
        amp = self._amplitude(hor, d.beta_hor) * self._amplitude(ver, d.beta_ver)
        power = self.ch.gain ** 2 * amp ** 2 * self.x_power
        self.count += 1
        return measure(power, self.snr, self.n_total, self.rng, self.ch.gain, self.x_power)

    def best(self, stage, layer, pairs, codewords) -> TrainingStep:
        powers = tuple(self.probe(h, v) for h, v in codewords)
        # first maximum wins ties
        k = int(np.argmax(powers))
        return TrainingStep(stage, layer, tuple(pairs), powers, pairs[k])


def _misaligned(ch: ChannelRealization, p: int, layer_p: int, q: int, layer_q: int) -> bool:
    d = ch.direction
    return (p != true_index(d.beta_hor, layer_p)) or (q != true_index(d.beta_ver, layer_q))


def _joint_layers(link: _Link, cb_hor, cb_ver, first: int, last: int, p: int, q: int):
    steps = []
    for s in range(first, last + 1):
        pairs = [(a, b) for a in child_indices(p) for b in child_indices(q)]
        cws = [(cb_hor.codeword(s, a), cb_ver.codeword(s, b)) for a, b in pairs]
        step = link.best("joint", s, pairs, cws)
        steps.append(step)
        p, q = step.selected
    return steps, p, q


def _hor_layers(link: _Link, cb_hor, ver_cw: Codeword, q_label: int,
                first: int, p: int):
    steps = []
    for s in range(first, cb_hor.s_max + 1):
        pairs = [(a, q_label) for a in child_indices(p)]
        cws = [(cb_hor.codeword(s, a), ver_cw) for a, _ in pairs]
        step = link.best("hor", s, pairs, cws)
        steps.append(step)
        p = step.selected[0]
    return steps, p


def _ver_layers(link: _Link, hor_cw: Codeword, p_label: int, cb_ver,
                first: int, q: int):
    steps = []
    for s in range(first, cb_ver.s_max + 1):
        pairs = [(p_label, b) for b in child_indices(q)]
        cws = [(hor_cw, cb_ver.codeword(s, b)) for _, b in pairs]
        step = link.best("ver", s, pairs, cws)
        steps.append(step)
        q = step.selected[1]
    return steps, q


def _link(cb_hor, cb_ver, ch, snr, rng, kd, x_power, ideal):
    return _Link(ch, _snr(snr), cb_hor.n * cb_ver.n, rng, kd, x_power, ideal)


def js_train(cb: HierarchicalCodebook, ch: ChannelRealization, snr,
             rng: np.random.Generator, *, cb_ver: HierarchicalCodebook | None = None,
             stop_layer: int | None = None, kd: float = KD_DEFAULT,
             x_power: float = 1.0, ideal_first_layer: bool = False) -> TrainingOutcome:
    """Joint search: both axes descend together, 4 probes per layer.

    ``stop_layer`` interrupts the search after that layer and returns the
    wide codeword pair reached so far.
    """
    cb_ver = cb if cb_ver is None else cb_ver
    if cb.n != cb_ver.n:
        raise ValueError("joint search needs a square array (n_hor == n_ver)")
    last = cb.s_max if stop_layer is None else stop_layer
    if not 1 <= last <= cb.s_max:
        raise ValueError(f"stop_layer must lie in 1..{cb.s_max}")
    link = _link(cb, cb_ver, ch, snr, rng, kd, x_power, ideal_first_layer)
    steps, p, q = _joint_layers(link, cb, cb_ver, 1, last, 1, 1)
    return TrainingOutcome(p, q, last, last, link.count,
                           _misaligned(ch, p, last, q, last), tuple(steps))


def dws_train(cb_hor: HierarchicalCodebook, cb_ver: HierarchicalCodebook,
              ch: ChannelRealization, snr, rng: np.random.Generator, *,
              kd: float = KD_DEFAULT, x_power: float = 1.0,
              ideal_first_layer: bool = False) -> TrainingOutcome:
    """Direction-wise search: horizontal axis under an omni vertical beam, then vertical."""
    link = _link(cb_hor, cb_ver, ch, snr, rng, kd, x_power, ideal_first_layer)
    omni = omni_codeword(cb_ver.n)
    steps_h, p = _hor_layers(link, cb_hor, omni, 0, 1, 1)
    hor_cw = cb_hor.codeword(cb_hor.s_max, p)
    steps_v, q = _ver_layers(link, hor_cw, p, cb_ver, 1, 1)
    return TrainingOutcome(p, q, cb_hor.s_max, cb_ver.s_max, link.count,
                           _misaligned(ch, p, cb_hor.s_max, q, cb_ver.s_max),
                           tuple(steps_h + steps_v))


def hybrid_train(cb_hor: HierarchicalCodebook, cb_ver: HierarchicalCodebook,
                 ch: ChannelRealization, snr, rng: np.random.Generator,
                 switch_layer: int, *, kd: float = KD_DEFAULT, x_power: float = 1.0,
                 ideal_first_layer: bool = False) -> TrainingOutcome:
    """Joint search for ``switch_layer`` layers, then direction-wise completion.

    The direction-wise part keeps the vertical codeword chosen by the joint
    part while it finishes the horizontal axis, then descends vertically.
    """
    if cb_hor.n != cb_ver.n:
        raise ValueError("the joint part needs a square array (n_hor == n_ver)")
    if not 1 <= switch_layer <= cb_hor.s_max:
        raise ValueError(f"switch_layer must lie in 1..{cb_hor.s_max}")
    link = _link(cb_hor, cb_ver, ch, snr, rng, kd, x_power, ideal_first_layer)
    steps, p, q = _joint_layers(link, cb_hor, cb_ver, 1, switch_layer, 1, 1)
    ver_cw = cb_ver.codeword(switch_layer, q)
    steps_h, p = _hor_layers(link, cb_hor, ver_cw, q, switch_layer + 1, p)
    hor_cw = cb_hor.codeword(cb_hor.s_max, p)
    steps_v, q = _ver_layers(link, hor_cw, p, cb_ver, switch_layer + 1, q)
    return TrainingOutcome(p, q, cb_hor.s_max, cb_ver.s_max, link.count,
                           _misaligned(ch, p, cb_hor.s_max, q, cb_ver.s_max),
                           tuple(steps + steps_h + steps_v))


def _ceil_log(n: int, m: int) -> int:
    if m < 2 or n < 1:
        raise ValueError("need branching m >= 2 and n >= 1")
    k, reach = 0, 1
    while reach < n:
        reach *= m
        k += 1
    return k


def js_complexity(n: int, m: int = 2) -> int:
    """Probe count of joint search on an ``m``-ary tree: ``m**2 * ceil(log_m n)``."""
    return m * m * _ceil_log(n, m)


def dws_complexity(n: int, m: int = 2) -> int:
    """Probe count of direction-wise search on an ``m``-ary tree: ``2 m ceil(log_m n)``."""
    return 2 * m * _ceil_log(n, m)


@lru_cache(maxsize=32)
def codebook_for(kind: str, n: int, stitching: str = "continuous") -> HierarchicalCodebook:
    """Shared read-only codebook for a Monte Carlo configuration."""
    if kind in ("ncpd", "ideal"):
        return build_codebook(n)
    if kind == "bmw-ss":
        return bmw_ss_codebook(n, stitching=stitching)
    raise ValueError(f"unknown codebook kind {kind!r}")


def sample_direction(rng: np.random.Generator, sampler: str = "beta") -> CascadedDirection:
    """Random cascaded direction: uniform in beta-space, or from uniform physical angles."""
    if sampler == "beta":
        bh, bv = rng.uniform(-BETA_MAX, BETA_MAX, 2)
        return CascadedDirection(float(bh), float(bv))
    if sampler == "physical":
        th = rng.uniform(0.0, math.pi / 2, 2)
        ph = rng.uniform(0.0, 2 * math.pi, 2)
        return cascaded_angles(PhysicalAngles(th[0], ph[0], th[1], ph[1]))
    raise ValueError(f"unknown direction sampler {sampler!r}")


def first_layer_trial(cb: HierarchicalCodebook, beta: float, snr, rng,
                      *, gain: float = 1.0, ideal: bool = False,
                      kd: float = KD_DEFAULT, x_power: float = 1.0) -> int:
    """Pick between the two top-layer codewords of a ULA; returns the chosen index."""
    one = omni_codeword(1)
    ch = ChannelRealization(CascadedDirection(beta, 0.0), gain)
    link = _Link(ch, _snr(snr), cb.n, rng, kd, x_power, ideal)
    step = link.best("hor", 1, [(1, 0), (2, 0)],
                     [(cb.codeword(1, 1), one), (cb.codeword(1, 2), one)])
    return step.selected[0]


def run_trial(scheme: Scheme, kind: CodebookKind, snr, n: int, seed: int, trial: int,
              *, n_ver: int | None = None, gain: float = 1.0,
              sampler: str = "beta", stitching: str = "continuous",
              kd: float = KD_DEFAULT) -> bool:
    """One Monte Carlo trial; returns ``True`` on misalignment."""
    rng = trial_rng(seed, trial)
    direction = sample_direction(rng, sampler)
    ideal = kind == "ideal"
    cb = codebook_for(kind, n, stitching)
    if scheme == "first-layer":
        beta = direction.beta_hor
        chosen = first_layer_trial(cb, beta, snr, rng, gain=gain, ideal=ideal, kd=kd)
        return chosen != true_index(beta, 1)
    ch = ChannelRealization(direction, gain)
    if scheme == "js":
        return js_train(cb, ch, snr, rng, kd=kd, ideal_first_layer=ideal).misaligned
    if scheme == "dws":
        cb_ver = cb if n_ver is None else codebook_for(kind, n_ver, stitching)
        return dws_train(cb, cb_ver, ch, snr, rng, kd=kd,
                         ideal_first_layer=ideal).misaligned
    raise ValueError(f"unknown scheme {scheme!r}")


def misalignment_rate(scheme: Scheme, kind: CodebookKind, snr, trials: int, seed: int,
                      n: int, **kwargs) -> float:
    """Fraction of ``trials`` random channels on which training misaligns.

    ``"first-layer"`` simulates a ULA and scores only the top-layer choice;
    ``"js"`` / ``"dws"`` run the full descent on an ``n x n`` (or
    ``n x n_ver``) array and score the final pencil beams.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    misses = sum(run_trial(scheme, kind, snr, n, seed, t, **kwargs) for t in range(trials))
    return misses / trials


def binomial_sigma(rate: float, trials: int) -> float:
    """Standard error of a Monte Carlo rate estimate."""
    return math.sqrt(max(rate * (1.0 - rate), 0.0) / trials)
