"""
Seeded hash families for sketches.

Polynomial hashing over the Mersenne-prime field GF(2^61 - 1). A random
polynomial of degree k - 1 is a k-wise independent family; each sketch draws
one polynomial per counter or repetition and evaluates all of them at once
with numpy uint64 arithmetic.
"""

from __future__ import annotations

import numpy as np

MERSENNE_61 = (1 << 61) - 1

_P = np.uint64(MERSENNE_61)
_SHIFT_61 = np.uint64(61)
_SHIFT_31 = np.uint64(31)
_SHIFT_30 = np.uint64(30)
_MASK_31 = np.uint64((1 << 31) - 1)
_MASK_30 = np.uint64((1 << 30) - 1)
_ONE = np.uint64(1)

# Stream keys so that independent consumers of one master seed never share draws
F0_HASH_KEY = 0xF0
F2_SIGN_KEY = 0xF2
DISTINCT_COIN_KEY = 0xC0


def derive_rng(seed: int, *keys: int) -> np.random.Generator:
    """Independent generator determined by (seed, keys)"""
    return np.random.default_rng([int(seed), *keys])


def _reduce(x: np.ndarray) -> np.ndarray:
    """Reduce values below 2^64 modulo 2^61 - 1"""
    x = (x & _P) + (x >> _SHIFT_61)
    return np.where(x >= _P, x - _P, x)


def mulmod(a: np.ndarray, b: np.ndarray | np.uint64) -> np.ndarray:
    """
    Multiply residues below 2^61 - 1 without leaving uint64.

    Splits both operands at bit 31 and folds the partial products with
    2^61 = 1 (mod p); the folded sum stays below 2^64.
    """
    a1, a0 = a >> _SHIFT_31, a & _MASK_31
    b1, b0 = b >> _SHIFT_31, b & _MASK_31

    hi = a1 * b1
    mid = a1 * b0 + a0 * b1
    lo = a0 * b0

    folded = (hi << _ONE) + (mid >> _SHIFT_30) + ((mid & _MASK_30) << _SHIFT_31) + lo
    return _reduce(folded)


class PolynomialHash:
    """
    A block of independent k-wise independent hash functions.

    Args:
        independence: k, the number of polynomial coefficients
        shape: Shape of the block; calling the hash returns an array of this shape
        rng: Source of the coefficients
    """

    def __init__(self, independence: int, shape: tuple[int, ...], rng: np.random.Generator):
        self.independence = independence
        self.shape = shape
        self.coefficients = rng.integers(0, MERSENNE_61, size=(independence, *shape), dtype=np.uint64)

    def __call__(self, x: int) -> np.ndarray:
        """Hash values in [0, 2^61 - 1) for key x under every member of the block"""
        xv = np.uint64(int(x) % MERSENNE_61)
        h = self.coefficients[0].copy()
        for c in self.coefficients[1:]:
            h = _reduce(mulmod(h, xv) + c)
        return h

    def signs(self, x: int) -> np.ndarray:
        """+1.0 / -1.0 per member, taken from the low bit of the hash"""
        low_bit = (self(x) & _ONE).astype(np.float64)
        return 1.0 - 2.0 * low_bit

    def trailing_zeros(self, x: int) -> np.ndarray:
        """Geometric level per member: number of trailing zero bits of the hash (61 for a zero hash)"""
        h = self(x)
        low = h & (~h + _ONE)
        _, exponent = np.frexp(low.astype(np.float64))
        levels = exponent - 1
        return np.where(h == 0, 61, levels).astype(np.int16)
