"""
Portable pseudo-random source for stream generation.

xorshift64* seeded through splitmix64, written out with explicit 64-bit
masking so that the same seed yields the same stream in any language:

    state ^= state >> 12
    state ^= state << 25
    state ^= state >> 27
    output = state * 0x2545F4914F6CDD1D   (mod 2**64)

Doubles are (output >> 11) * 2**-53.
"""

from __future__ import annotations

import math

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
XORSHIFT_MULTIPLIER = 0x2545F4914F6CDD1D


def splitmix64(seed: int) -> int:
    """One splitmix64 step from seed"""
    z = (seed + GOLDEN_GAMMA) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


class XorShift64Star:
    """xorshift64* generator"""

    def __init__(self, seed: int):
        self.state = splitmix64(seed & MASK64) or GOLDEN_GAMMA

    def next_u64(self) -> int:
        x = self.state
        x ^= x >> 12
        x ^= (x << 25) & MASK64
        x ^= x >> 27
        self.state = x
        return (x * XORSHIFT_MULTIPLIER) & MASK64

    def random(self) -> float:
        """Uniform double in [0, 1)"""
        return (self.next_u64() >> 11) * 2.0**-53

    def open_random(self) -> float:
        """Uniform double in (0, 1)"""
        return ((self.next_u64() >> 11) + 0.5) * 2.0**-53

    def below(self, bound: int) -> int:
        """Integer in [0, bound) by multiply-shift"""
        return (self.next_u64() * bound) >> 64

    def exponential(self) -> float:
        """Exp(1) draw, strictly positive"""
        return -math.log(self.open_random())
