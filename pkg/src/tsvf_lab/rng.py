"""Counter-based uniform variates keyed by (seed, stream_index, draw).

The generator is a SplitMix64-style construction: a Weyl increment per key
component followed by the SplitMix64 finalizer. No state is carried between
draws, so trial ``i`` can use ``stream_index=i`` and trials may be evaluated
in any order or in parallel with identical results.

A scalar (pure Python) and a vectorized (numpy uint64) path are provided;
they produce bit-identical values.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_MASK = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_GAMMA_DRAW = 0xD1B54A32D192ED03
_M1 = 0xBF58476D1CE4E5B9
_M2 = 0x94D049BB133111EB
_INV_2_52 = 1.0 / (1 << 52)


def _mix(z: int) -> int:
    z = ((z ^ (z >> 30)) * _M1) & _MASK
    z = ((z ^ (z >> 27)) * _M2) & _MASK
    return z ^ (z >> 31)


def _mix_np(z: np.ndarray) -> np.ndarray:
    z = (z ^ (z >> np.uint64(30))) * np.uint64(_M1)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(_M2)
    return z ^ (z >> np.uint64(31))


def hash64(seed: int, stream_index: int, draw: int) -> int:
    k = _mix((seed + _GAMMA) & _MASK)
    s = _mix((k + (stream_index + 1) * _GAMMA) & _MASK)
    return _mix((s + (draw + 1) * _GAMMA_DRAW) & _MASK)


def to_unit(h):
    """Map 64 random bits to the open interval (0, 1) using the top 52 bits (every result is exact)."""
    return ((h >> 12) + 0.5) * _INV_2_52


def uniforms(seed: int, streams, draw: int) -> np.ndarray:
    """Vectorized draw ``draw`` for each stream index in ``streams``."""
    streams = np.asarray(streams, dtype=np.uint64)
    with np.errstate(over="ignore"):
        k = np.uint64(_mix((seed + _GAMMA) & _MASK))
        s = _mix_np(k + (streams + np.uint64(1)) * np.uint64(_GAMMA))
        h = _mix_np(s + np.uint64(((draw + 1) * _GAMMA_DRAW) & _MASK))
    return ((h >> np.uint64(12)).astype(np.float64) + 0.5) * _INV_2_52


@dataclass(frozen=True)
class RngStream:
    seed: int
    stream_index: int = 0

    def __post_init__(self):
        if not 0 <= self.seed <= _MASK:
            # accept negative seeds by wrapping into 64 bits
            object.__setattr__(self, "seed", self.seed & _MASK)
        if self.stream_index < 0:
            raise ValueError("stream_index must be nonnegative")

    def uniform(self, draw: int = 0) -> float:
        return to_unit(hash64(self.seed, self.stream_index, draw))

    def split(self, stream_index: int) -> "RngStream":
        return RngStream(self.seed, stream_index)
