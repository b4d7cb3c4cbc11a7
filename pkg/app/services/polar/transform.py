"""
Polar transform x = u G_N with G_N = B_N F^{(x)n}, F = [[1, 0], [1, 1]]
"""

from functools import lru_cache

import numpy as np

from app.models.polar import as_bit_vector, log2_length


@lru_cache(maxsize=32)
def _bit_reversal(n: int) -> np.ndarray:
    idx = np.arange(1 << n, dtype=np.int64)
    rev = np.zeros_like(idx)
    for bit in range(n):
        rev |= ((idx >> bit) & 1) << (n - 1 - bit)
    rev.setflags(write=False)
    return rev


def bit_reversal_permutation(n: int) -> np.ndarray:
    """
    Permutation of {0..2^n-1} mapping i to the integer with reversed n-bit representation

    Examples:
        n=2 -> [0, 2, 1, 3]
        n=3 -> [0, 4, 2, 6, 1, 5, 3, 7]
    """
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    return _bit_reversal(n)


def butterfly(u: np.ndarray) -> np.ndarray:
    """
    u F^{(x)n} over GF(2) along the last axis, without the bit-reversal stage.
    O(N log N); u is not modified.
    """
    x = np.array(u, dtype=np.uint8, copy=True)
    length = x.shape[-1]
    lead = x.shape[:-1]
    half = 1
    while half < length:
        view = x.reshape(*lead, length // (2 * half), 2, half)
        view[..., 0, :] ^= view[..., 1, :]
        half *= 2
    return x


def polar_transform(u) -> np.ndarray:
    """
    Encode u (shape (..., N), N = 2^n) to x = u G_N over GF(2).

    G_N is its own inverse over GF(2), so polar_transform(polar_transform(u)) == u.

    Raises:
        InvalidLengthError: N is not a power of two
    """
    u = np.asarray(u)
    n = log2_length(u.shape[-1])
    u = as_bit_vector(u)
    return butterfly(u)[..., bit_reversal_permutation(n)]


__all__ = ["bit_reversal_permutation", "butterfly", "polar_transform"]
