"""Binary-tree hierarchical codebook over one cascaded-direction axis.

Layer ``s`` (1-based, ``s = 1..S``) splits [-2, 2] into ``2**s`` equal
ranges; codeword ``i`` (1-based) covers

    psi_a = -2 + 4 (i - 1) / 2**s,    psi_b = -2 + 4 i / 2**s.

With ``n`` elements per axis the bottom layer holds ``2n`` pencil beams,
so ``S = log2(2n)``.  Bottom codeword ``i`` steers to the centre of its
range, ``psi_i = (2 (i - n) - 1) / n``; every other layer uses the flat
NCPD beam over its range.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterator, Optional

from .array_factor import PhaseProfile
from .geometry import Axis
from .synthesis import ncpd_flat, narrow_profile

__all__ = [
    "Codeword",
    "HierarchicalCodebook",
    "build_codebook",
    "child_indices",
    "codeword_range",
    "omni_codeword",
    "layer_count",
    "bottom_steering",
    "true_index",
]


@dataclass(frozen=True)
class Codeword:
    layer: int
    index: int
    psi_a: float
    psi_b: float
    profile: PhaseProfile = field(repr=False)
    steering: Optional[float] = None

    @property
    def range(self) -> tuple[float, float]:
        return (self.psi_a, self.psi_b)

    def contains(self, beta: float) -> bool:
        """Half-open membership ``psi_a < beta <= psi_b``; ``beta = -2`` joins the first range."""
        if beta == self.psi_a == -2.0:
            return True
        return self.psi_a < beta <= self.psi_b


def _is_power_of_two(n: int) -> bool:
    return isinstance(n, int) and n >= 1 and n & (n - 1) == 0


def layer_count(n: int) -> int:
    """``S`` with ``2**S = 2n``."""
    if not _is_power_of_two(n) or n < 2:
        raise ValueError(f"element count must be a power of two >= 2, got {n!r}")
    return n.bit_length()


def codeword_range(layer: int, index: int) -> tuple[float, float]:
    if layer < 1 or not 1 <= index <= 2 ** layer:
        raise ValueError(f"no codeword {index} in layer {layer}")
    width = 4.0 / 2 ** layer
    return (-2.0 + width * (index - 1), -2.0 + width * index)


def bottom_steering(n: int, index: int) -> float:
    """Steering direction of bottom-layer codeword ``index`` (1-based)."""
    return (2 * (index - n) - 1) / n


def true_index(beta: float, layer: int) -> int:
    """Index of the layer codeword whose range contains ``beta``.

    At the bottom layer this is the pencil beam whose steering direction is
    nearest to ``beta``; exact midpoints go to the lower index.
    """
    count = 2 ** layer
    scaled = (beta + 2.0) * count / 4.0
    idx = min(max(int(-(-scaled // 1)), 1), count)  # ceil
    # settle rounding at range boundaries against the stored range endpoints
    psi_a, psi_b = codeword_range(layer, idx)
    if beta > psi_b and idx < count:
        idx += 1
    elif beta <= psi_a and idx > 1:
        idx -= 1
    return idx


def child_indices(i: int) -> tuple[int, int]:
    """Indices of the two next-layer codewords tiling codeword ``i``'s range."""
    if i < 1:
        raise ValueError(f"codeword indices are 1-based, got {i!r}")
    return (2 * i - 1, 2 * i)


ProfileFactory = Callable[[int, int, float, float], PhaseProfile]


class HierarchicalCodebook:
    """Codebook tree for an ``n``-element axis.

    Wide-layer profiles come from ``wide_factory(layer, index, psi_a, psi_b)``
    and are built on first access, then cached; the bottom layer always holds
    pencil beams.  Use :func:`build_codebook` for the NCPD codebook.
    """

    def __init__(self, n: int, wide_factory: ProfileFactory, kind: str = "ncpd",
                 axis: Axis = "hor", meta: dict | None = None):
        self.s_max = layer_count(n)
        self.n = n
        self.kind = kind
        self.axis = axis
        self.meta = dict(meta or {})
        self._wide_factory = wide_factory
        self._cache: dict[tuple[int, int], Codeword] = {}

    @classmethod
    def from_codewords(cls, n: int, codewords, kind: str = "ncpd", axis: Axis = "hor",
                       meta: dict | None = None) -> "HierarchicalCodebook":
        """Rebuild a codebook from a complete set of stored codewords."""

        def missing(layer, index, psi_a, psi_b):
            raise KeyError(f"codeword ({layer}, {index}) missing from stored codebook")

        cb = cls(n, missing, kind=kind, axis=axis, meta=meta)
        for cw in codewords:
            cb._cache[(cw.layer, cw.index)] = cw
        expected = sum(2 ** s for s in range(1, cb.s_max + 1))
        if len(cb._cache) != expected:
            raise ValueError(f"expected {expected} codewords, got {len(cb._cache)}")
        return cb

    def __repr__(self):
        return f"HierarchicalCodebook(kind={self.kind!r}, n={self.n}, S={self.s_max})"

    def codeword(self, layer: int, index: int) -> Codeword:
        key = (layer, index)
        cw = self._cache.get(key)
        if cw is None:
            if not 1 <= layer <= self.s_max:
                raise ValueError(f"layer must lie in 1..{self.s_max}, got {layer}")
            psi_a, psi_b = codeword_range(layer, index)
            if layer == self.s_max:
                steer = bottom_steering(self.n, index)
                cw = Codeword(layer, index, psi_a, psi_b,
                              narrow_profile(steer, self.n, self.axis), steer)
            else:
                profile = self._wide_factory(layer, index, psi_a, psi_b)
                cw = Codeword(layer, index, psi_a, psi_b, profile)
            self._cache[key] = cw
        return cw

    def layer(self, s: int) -> list[Codeword]:
        return [self.codeword(s, i) for i in range(1, 2 ** s + 1)]

    @property
    def layers(self) -> list[list[Codeword]]:
        """All layers, top first.  Materialises every profile."""
        return [self.layer(s) for s in range(1, self.s_max + 1)]

    def __iter__(self) -> Iterator[Codeword]:
        for s in range(1, self.s_max + 1):
            yield from self.layer(s)

    def bottom(self) -> list[Codeword]:
        return self.layer(self.s_max)


def build_codebook(n: int, axis: Axis = "hor") -> HierarchicalCodebook:
    """NCPD hierarchical codebook for an ``n``-element axis (``n`` a power of two)."""

    def wide(layer, index, psi_a, psi_b):
        return ncpd_flat(psi_a, psi_b, n, axis)

    return HierarchicalCodebook(n, wide, kind="ncpd", axis=axis)


def omni_codeword(n: int, axis: Axis = "ver") -> Codeword:
    """Flat beam over the whole band; used to blank one axis while searching the other."""
    return Codeword(0, 1, -2.0, 2.0, ncpd_flat(-2.0, 2.0, n, axis))
