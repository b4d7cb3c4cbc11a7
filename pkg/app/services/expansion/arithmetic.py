"""
Binary expansion of non-negative reals and the level-wise ripple-carry adder
"""

from typing import Tuple

import numpy as np

from app.core.exceptions import DomainError, InvalidArgumentError
from app.models.expansion import AdderResult, ExpansionDigits

MAX_DIGITS = 62


def _check_depths(l1: int, l2: int) -> int:
    if l1 < 0 or l2 < 0:
        raise DomainError(f"L1 and L2 must be non-negative, got {l1}, {l2}")
    digits = l1 + l2 + 1
    if digits > MAX_DIGITS:
        raise InvalidArgumentError(f"at most {MAX_DIGITS} levels are supported, got {digits}")
    return digits


def expand_bits(value, l1: int, l2: int) -> ExpansionDigits:
    """
    Truncate value toward zero onto the dyadic grid 2^-L1 and split into levels.

    Args:
        value: non-negative scalar or array
        l1: fractional depth
        l2: integer depth (top level)

    Returns:
        ExpansionDigits with bits[..., j] the digit of level j - L1, the
        truncation residual and the part of value at or above 2^(L2+1)
    """
    digits = _check_depths(l1, l2)
    value = np.asarray(value, dtype=np.float64)
    if (value < 0).any():
        raise DomainError("expanded values must be non-negative")

    scale = 2.0 ** l1
    grid = np.floor(value * scale)
    clipped = np.minimum(grid, float((1 << digits) - 1))
    k = clipped.astype(np.int64)

    bits = ((k[..., None] >> np.arange(digits, dtype=np.int64)) & 1).astype(np.uint8)
    residual = value - grid / scale
    overflow = (grid - clipped) / scale
    return ExpansionDigits(bits=bits, residual=residual, overflow=overflow)


def reassemble(bits, l1: int) -> np.ndarray:
    """sum_l 2^l b_l over the last axis"""
    bits = np.asarray(bits)
    weights = np.exp2(np.arange(bits.shape[-1], dtype=np.float64) - l1)
    return bits.astype(np.float64) @ weights


def majority(a: np.ndarray, b: np.ndarray, c: np.ndarray) -> np.ndarray:
    return (a & b) | (a & c) | (b & c)


def carry_add(xbits, zbits) -> AdderResult:
    """
    Level-wise sum from the lowest level upward.

    y_l = x_l xor z_l xor c_l, c_{l+1} = majority(x_l, z_l, c_l), c at the lowest
    level is 0. reassemble(y) + 2^(L2+1) carry_out equals the real sum.
    """
    x = np.asarray(xbits, dtype=np.uint8)
    z = np.asarray(zbits, dtype=np.uint8)
    if x.shape != z.shape:
        raise InvalidArgumentError(f"level ranges differ: {x.shape} vs {z.shape}")

    y = np.empty_like(x)
    carries = np.zeros_like(x)
    carry = np.zeros(x.shape[:-1], dtype=np.uint8)
    for j in range(x.shape[-1]):
        carries[..., j] = carry
        y[..., j] = x[..., j] ^ z[..., j] ^ carry
        carry = majority(x[..., j], z[..., j], carry)
    return AdderResult(bits=y, carries=carries, carry_out=carry)


def recover_carry(y_bits, x_hat, carry) -> Tuple[np.ndarray, np.ndarray]:
    """
    Invert one adder stage at the receiver.

    Returns:
        (z_hat, next_carry) with z_hat = y xor x_hat xor c and
        next_carry = majority(x_hat, z_hat, c)
    """
    y_bits = np.asarray(y_bits, dtype=np.uint8)
    x_hat = np.asarray(x_hat, dtype=np.uint8)
    carry = np.asarray(carry, dtype=np.uint8)
    z_hat = y_bits ^ x_hat ^ carry
    return z_hat, majority(x_hat, z_hat, carry)


__all__ = ["MAX_DIGITS", "expand_bits", "reassemble", "majority", "carry_add", "recover_carry"]
