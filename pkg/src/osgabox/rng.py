"""Deterministic 64-bit mixing generator used for all seeded randomness.

Problem generation must be reproducible bit-for-bit from a seed, independent
of any host library's RNG internals, so the generator is pinned down exactly:

* state update: ``s <- (s + 0x9E3779B97F4A7C15) mod 2^64``
* output finalizer applied to the updated state::

      z ^= z >> 30;  z *= 0xBF58476D1CE4E5B9
      z ^= z >> 27;  z *= 0x94D049BB133111EB
      z ^= z >> 31

* ``uniform``: one 64-bit output, top 53 bits scaled by 2^-53, in [0, 1)
* ``normal``: two consecutive uniforms (u1, u2) via Box-Muller,
  ``sqrt(-2 ln(u1')) * cos(2 pi u2)`` with ``u1' = (bits1 >> 11 + 1) * 2^-53``
  so the log argument is in (0, 1]

Because the state after k draws is ``s0 + k*C``, whole blocks can be produced
vectorized; block and scalar draws yield identical streams.
"""

from __future__ import annotations

import numpy as np

_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB

_TWO53 = float(1 << 53)


def _mix(z: np.ndarray) -> np.ndarray:
    z = (z ^ (z >> np.uint64(30))) * np.uint64(_MIX1)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(_MIX2)
    return z ^ (z >> np.uint64(31))


class SplitMix64:
    """Seeded counter-based generator with the fixed stream defined above."""

    def __init__(self, seed: int):
        self._state = int(seed) & _MASK

    def next_u64(self) -> int:
        self._state = (self._state + _GOLDEN) & _MASK
        z = self._state
        z = ((z ^ (z >> 30)) * _MIX1) & _MASK
        z = ((z ^ (z >> 27)) * _MIX2) & _MASK
        return z ^ (z >> 31)

    def _block_u64(self, count: int) -> np.ndarray:
        # state after the i-th draw is s0 + (i+1)*C mod 2^64
        idx = np.arange(1, count + 1, dtype=np.uint64)
        states = np.uint64(self._state) + idx * np.uint64(_GOLDEN)
        self._state = (self._state + count * _GOLDEN) & _MASK
        return _mix(states)

    def uniform(self, count: int | None = None):
        """Uniform draws in [0, 1); scalar when ``count`` is None."""
        if count is None:
            return (self.next_u64() >> 11) * (1.0 / _TWO53)
        bits = self._block_u64(count)
        return (bits >> np.uint64(11)).astype(np.float64) / _TWO53

    def normal(self, count: int | None = None):
        """Standard normal draws; each consumes exactly two uniforms."""
        if count is None:
            return float(self.normal(1)[0])
        bits = self._block_u64(2 * count)
        u1 = ((bits[0::2] >> np.uint64(11)).astype(np.float64) + 1.0) / _TWO53
        u2 = (bits[1::2] >> np.uint64(11)).astype(np.float64) / _TWO53
        return np.sqrt(-2.0 * np.log(u1)) * np.cos(2.0 * np.pi * u2)

    def integers(self, upper: int, count: int | None = None):
        """Draws in [0, upper) by modular reduction (upper << 2^64)."""
        if count is None:
            return self.next_u64() % upper
        return (self._block_u64(count) % np.uint64(upper)).astype(np.int64)
