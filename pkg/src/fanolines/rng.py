"""Deterministic pseudo-random streams for reproducible sampling.

The generator is SplitMix64.  Every sampled object in a census is drawn from
its own substream, derived from (master seed, sample index) by a closed-form
mix, so results are independent of iteration order and thread count.

State update and output, all arithmetic mod 2^64:

    state   <- state + GOLDEN
    output  =  finalize(state)

where finalize is the 64-bit avalanche

    z ^= z >> 30;  z *= 0xBF58476D1CE4E5B9
    z ^= z >> 27;  z *= 0x94D049BB133111EB
    z ^= z >> 31

The k-th output of a stream seeded with s is therefore
finalize(s + k * GOLDEN) with k starting at 1, which is what the vectorized
helpers compute directly.
"""

from __future__ import annotations

import numpy as np

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
_MUL1 = 0xBF58476D1CE4E5B9
_MUL2 = 0x94D049BB133111EB


def finalize(z: int) -> int:
    """SplitMix64 output function on a 64-bit state."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * _MUL1) & MASK64
    z = ((z ^ (z >> 27)) * _MUL2) & MASK64
    return z ^ (z >> 31)


class SplitMix64:
    """Sequential SplitMix64 stream."""

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + GOLDEN) & MASK64
        return finalize(self.state)

    def next_below(self, bound: int) -> int:
        """Next draw reduced mod bound (bound << 2^64, bias negligible)."""
        return self.next_u64() % bound


def substream_seed(master_seed: int, index: int) -> int:
    """Seed of the index-th substream of a master seed."""
    return finalize((master_seed + index * GOLDEN) & MASK64)


def substream(master_seed: int, index: int) -> SplitMix64:
    return SplitMix64(substream_seed(master_seed, index))


def _finalize_np(z: np.ndarray) -> np.ndarray:
    z = z.astype(np.uint64, copy=True)
    z ^= z >> np.uint64(30)
    z *= np.uint64(_MUL1)
    z ^= z >> np.uint64(27)
    z *= np.uint64(_MUL2)
    z ^= z >> np.uint64(31)
    return z

# numpy warns on uint64 overflow only under explicit errstate changes; the
# wrapping behaviour itself is what SplitMix64 needs.


def outputs_np(seed: int, start: int, count: int) -> np.ndarray:
    """Outputs start+1 .. start+count of the stream seeded with seed.

    Equals [SplitMix64(seed).next_u64() for _ in ...][start:start+count]
    without stepping through the prefix.
    """
    ks = np.arange(start + 1, start + count + 1, dtype=np.uint64)
    base = ks * np.uint64(GOLDEN) + np.uint64(seed & MASK64)
    return _finalize_np(base)


def substream_seeds_np(master_seed: int, indices: np.ndarray) -> np.ndarray:
    base = indices.astype(np.uint64) * np.uint64(GOLDEN) + np.uint64(master_seed & MASK64)
    return _finalize_np(base)
