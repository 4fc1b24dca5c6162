"""Splittable, counter-based random streams.

A stream is identified by a 64-bit root seed plus a path of substream
indices. The underlying bit generator is Philox (counter-based), keyed
through ``numpy.random.SeedSequence`` spawn keys, so any substream can be
reconstructed from ``(seed, path)`` alone. Substreams with distinct paths
are statistically independent, which is what lets samplers hand out
disjoint streams per variate and, if desired, fan work out across workers
without changing results.
"""

from __future__ import annotations

import numpy as np

from .errors import DomainError

_MAX_SEED = 2**64

# 53-bit lattice keeps inverse-CDF sampling away from the 0 and 1 endpoints.
_OPEN_DENOM = float(1 << 53)


class RngStream:
    """One deterministic stream of randomness, splittable into substreams."""

    def __init__(self, seed: int, path: tuple[int, ...] = ()):
        if not (0 <= int(seed) < _MAX_SEED):
            raise DomainError(f"seed must be a 64-bit unsigned integer, got {seed!r}")
        self.seed = int(seed)
        self.path = tuple(int(p) for p in path)
        ss = np.random.SeedSequence(self.seed, spawn_key=self.path)
        self.generator = np.random.Generator(np.random.Philox(ss))

    def substream(self, index: int) -> "RngStream":
        """Independent child stream; same (seed, path, index) always gives the same draws."""
        if index < 0:
            raise DomainError("substream index must be nonnegative")
        return RngStream(self.seed, self.path + (index,))

    def uniform_open(self, count: int) -> np.ndarray:
        """Uniform draws on the open interval (0, 1), safe to feed to quantile functions."""
        ints = self.generator.integers(1, 1 << 53, size=count)
        return ints / _OPEN_DENOM

    def uniform(self, count: int) -> np.ndarray:
        return self.generator.random(count)

    def beta(self, a: float, b: float, count: int) -> np.ndarray:
        return self.generator.beta(a, b, count)

    def permutation(self, n: int) -> np.ndarray:
        return self.generator.permutation(n)

    def __repr__(self) -> str:
        return f"RngStream(seed={self.seed}, path={self.path})"
