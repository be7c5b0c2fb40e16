"""Counter-based SplitMix64 random streams.

All randomness in the package flows through this module. The generator is
counter-based: output word k is a pure function of (seed, k), so the same
draws can be reproduced from plain Python, from vectorized numpy code and
from compiled kernels, and per-run child streams can be derived without
sequential dependencies.
"""

from __future__ import annotations

import numpy as np

_MASK = (1 << 64) - 1

GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


def mix64(z: int) -> int:
    """SplitMix64 finalizer, uint64 -> uint64."""
    z &= _MASK
    z = ((z ^ (z >> 30)) * _MIX1) & _MASK
    z = ((z ^ (z >> 27)) * _MIX2) & _MASK
    return (z ^ (z >> 31)) & _MASK


def word(seed: int, k: int) -> int:
    """k-th output word of the stream with the given seed (k >= 0)."""
    return mix64((seed + (k + 1) * GOLDEN) & _MASK)


def derive_stream(master_seed: int, index: int) -> int:
    """Seed of the index-th child stream (the index-th output word)."""
    return word(master_seed, index)


def rademacher(seed: int, k: int) -> float:
    """+1.0 when the low bit of word k is set, else -1.0."""
    return 1.0 if word(seed, k) & 1 else -1.0


def sign_vector(seed: int, step: int, n: int) -> np.ndarray:
    """Exploration signs for all n players at one step.

    Player i consumes word index step*n + i, matching the compiled kernel.
    """
    return np.array([rademacher(seed, step * n + i) for i in range(n)])


def uniform(seed: int, k: int) -> float:
    """Uniform double in [0, 1) built from the top 53 bits of word k."""
    return (word(seed, k) >> 11) * (1.0 / 9007199254740992.0)


class SplitMix64:
    """Sequential view over one stream; next_* calls consume words in order."""

    def __init__(self, seed: int):
        self.seed = seed & _MASK
        self._k = 0

    def next_word(self) -> int:
        w = word(self.seed, self._k)
        self._k += 1
        return w

    def next_uniform(self, lo: float = 0.0, hi: float = 1.0) -> float:
        u = (self.next_word() >> 11) * (1.0 / 9007199254740992.0)
        return lo + (hi - lo) * u

    def next_uniforms(self, n: int, lo: float = 0.0, hi: float = 1.0) -> np.ndarray:
        return np.array([self.next_uniform(lo, hi) for _ in range(n)])

    def next_signs(self, n: int) -> np.ndarray:
        return np.array([1.0 if self.next_word() & 1 else -1.0 for _ in range(n)])

    def next_gaussians(self, n: int) -> np.ndarray:
        """Standard normals via Box-Muller (two uniforms per pair)."""
        out = np.empty(n)
        i = 0
        while i < n:
            u1 = self.next_uniform()
            u2 = self.next_uniform()
            if u1 <= 0.0:
                continue
            r = np.sqrt(-2.0 * np.log(u1))
            out[i] = r * np.cos(2.0 * np.pi * u2)
            i += 1
            if i < n:
                out[i] = r * np.sin(2.0 * np.pi * u2)
                i += 1
        return out
