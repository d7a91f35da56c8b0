"""Reproducible random-number streams for Monte Carlo work.

A stream is identified by a 64-bit base seed plus an integer stream
index.  The pair is mixed into a single PCG64 seed with SplitMix64, a
fixed 64-bit finalizer, so that

  * identical (seed, stream) always produce identical draws,
  * distinct stream indices give statistically independent streams,
  * replications can run in any order (or in parallel) and still match
    a serial run exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def _splitmix64(x: int) -> int:
    x = (x + _GOLDEN) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


def _mix(seed: int, stream: int) -> int:
    return _splitmix64(_splitmix64(seed & _MASK64) ^ _splitmix64(stream & _MASK64))


@dataclass(frozen=True)
class RngSeed:
    """A (seed, stream) pair naming one reproducible random stream."""

    seed: int
    stream: int = 0

    def __post_init__(self):
        if not 0 <= self.seed <= _MASK64:
            raise ValueError("seed must fit in 64 bits")
        if self.stream < 0:
            raise ValueError("stream index must be nonnegative")

    def generator(self) -> np.random.Generator:
        """PCG64 generator for this stream."""
        return np.random.Generator(np.random.PCG64(_mix(self.seed, self.stream)))

    def derive(self, index: int) -> "RngSeed":
        """Child seed for sub-replication `index` of this stream.

        The child's base seed is the mixed state of this stream, so
        nested derivations (experiment -> replication -> bootstrap
        draw) never collide.
        """
        return RngSeed(seed=_mix(self.seed, self.stream), stream=index)
