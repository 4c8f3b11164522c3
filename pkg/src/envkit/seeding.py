"""Deterministic pseudo-random numbers and hierarchical seed derivation.

The generator is a fixed, documented choice rather than "any PRNG": a 64-bit
seed is expanded into 256 bits of state with splitmix64, and the stream is
produced by xoshiro256**.  Both algorithms are implemented with plain integer
arithmetic so that streams are bit-identical across platforms, which the
trajectory-determinism guarantees of this library depend on.

Child seeds for sub-environments come from the splitmix64 stream of the
parent seed (see :func:`derive_child_seeds`), so a single user seed fans out
reproducibly over any number of vectorized copies.
"""

from __future__ import annotations

import itertools
import math
import time

_MASK64 = (1 << 64) - 1
_SPLITMIX_GAMMA = 0x9E3779B97F4A7C15
_DOUBLE_SCALE = 1.0 / (1 << 53)


def _splitmix64(state: int) -> tuple[int, int]:
    """Advance a splitmix64 state by one step; return (new_state, output)."""
    state = (state + _SPLITMIX_GAMMA) & _MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return state, z ^ (z >> 31)


def _rotl(x: int, k: int) -> int:
    return ((x << k) | (x >> (64 - k))) & _MASK64


def _check_seed(seed: int) -> int:
    if not isinstance(seed, int) or isinstance(seed, bool):
        raise TypeError(f"seed must be an integer, got {type(seed).__name__}")
    if not 0 <= seed <= _MASK64:
        raise ValueError(f"seed must fit in an unsigned 64-bit integer, got {seed}")
    return seed


class Rng:
    """xoshiro256** stream seeded from a 64-bit integer.

    An Rng is single-owner mutable state: it may be handed from one context
    to another but must never be drawn from concurrently.
    """

    __slots__ = ("_s0", "_s1", "_s2", "_s3")

    def __init__(self, seed: int):
        state = _check_seed(seed)
        state, self._s0 = _splitmix64(state)
        state, self._s1 = _splitmix64(state)
        state, self._s2 = _splitmix64(state)
        _, self._s3 = _splitmix64(state)

    def next_uint64(self) -> int:
        """Return the next 64-bit output of the stream."""
        s0, s1, s2, s3 = self._s0, self._s1, self._s2, self._s3
        result = (_rotl((s1 * 5) & _MASK64, 7) * 9) & _MASK64
        t = (s1 << 17) & _MASK64
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        s3 = _rotl(s3, 45)
        self._s0, self._s1, self._s2, self._s3 = s0, s1, s2, s3
        return result

    def next_double(self) -> float:
        """Uniform real in [0, 1), from the top 53 bits of one 64-bit draw."""
        return (self.next_uint64() >> 11) * _DOUBLE_SCALE

    def below(self, n: int) -> int:
        """Unbiased uniform integer in [0, n), via bitmask rejection."""
        n = int(n)
        if n < 1:
            raise ValueError(f"below() requires n >= 1, got {n}")
        mask = (1 << (n - 1).bit_length()) - 1
        while True:
            value = self.next_uint64() & mask
            if value < n:
                return value

    def uniform(self, low: float, high: float) -> float:
        """Uniform real in [low, high)."""
        return low + (high - low) * self.next_double()

    def normal(self) -> float:
        """Standard normal deviate (Box-Muller, cosine branch).

        Consumes exactly two 64-bit draws per call; the sine partner is
        discarded to keep the per-value draw count fixed.
        """
        u1 = 1.0 - self.next_double()  # (0, 1]: keeps log() finite
        u2 = self.next_double()
        return math.sqrt(-2.0 * math.log(u1)) * math.cos(2.0 * math.pi * u2)

    def exponential(self) -> float:
        """Standard exponential deviate (inverse CDF)."""
        return -math.log1p(-self.next_double())

    def __repr__(self) -> str:
        return f"Rng(state=({self._s0:#x}, {self._s1:#x}, {self._s2:#x}, {self._s3:#x}))"


def rng_from_seed(seed: int) -> Rng:
    """Construct a fully initialized generator from a 64-bit seed."""
    return Rng(seed)


def derive_child_seeds(parent: int, n: int) -> list[int]:
    """Return ``n`` deterministic child seeds for a parent seed.

    Child ``i`` is the ``i``-th output of the splitmix64 stream seeded with
    ``parent``.  Used to seed the sub-environments of a vector environment
    from one user-provided seed.
    """
    state = _check_seed(parent)
    if n < 1:
        raise ValueError(f"derive_child_seeds() requires n >= 1, got {n}")
    children = []
    for _ in range(n):
        state, child = _splitmix64(state)
        children.append(child)
    return children


_entropy_counter = itertools.count()


def entropy_seed() -> int:
    """Wall-clock fallback seed for callers that did not provide one.

    Mixes the nanosecond clock with a process-local counter through
    splitmix64 so that rapid successive calls still differ.  This is the
    only non-reproducible seed source in the library.
    """
    raw = (time.time_ns() ^ (next(_entropy_counter) << 48)) & _MASK64
    _, seed = _splitmix64(raw)
    return seed
