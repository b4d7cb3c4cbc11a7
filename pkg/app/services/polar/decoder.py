"""
Successive cancellation decoding over log-likelihood ratios
Positive LLR means symbol 0; a zero LLR decides 0.
"""

import logging
from typing import Callable, Optional, Tuple

import numpy as np

from app.core.config import settings
from app.core.exceptions import InvalidArgumentError
from app.models.polar import ERASED, ChannelKind, ChannelObservation, PolarCodeSpec, SCResult
from app.services.polar.transform import bit_reversal_permutation, butterfly, polar_transform

logger = logging.getLogger(__name__)

CheckNode = Callable[[np.ndarray, np.ndarray], np.ndarray]


def boxplus_exact(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """ln((1 + e^{a+b}) / (e^a + e^b)); exactly 0 when either input is 0"""
    return np.logaddexp(0.0, a + b) - np.logaddexp(a, b)


def boxplus_minsum(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """sign(a) sign(b) min(|a|, |b|); exact on erasure evidence"""
    return np.sign(a) * np.sign(b) * np.minimum(np.abs(a), np.abs(b))


def bsc_llr(symbols: np.ndarray, p: float, saturation: Optional[float] = None) -> np.ndarray:
    """Channel evidence ln((1-p)/p) with the sign of the received symbol"""
    saturation = settings.LLR_SATURATION if saturation is None else saturation
    magnitude = saturation if p <= 0.0 else min(float(np.log((1.0 - p) / p)), saturation)
    return magnitude * (1.0 - 2.0 * np.asarray(symbols, dtype=np.float64))


def bec_llr(symbols: np.ndarray, saturation: Optional[float] = None) -> np.ndarray:
    """Known symbols carry +-saturation, erasures carry 0"""
    saturation = settings.LLR_SATURATION if saturation is None else saturation
    sym = np.asarray(symbols)
    llr = saturation * (1.0 - 2.0 * sym.astype(np.float64))
    llr[sym == ERASED] = 0.0
    return llr


def _decode_node(
    llr: np.ndarray,
    frozen_mask: np.ndarray,
    frozen_bits: np.ndarray,
    check: CheckNode,
    saturation: float,
    track_erasures: bool,
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Decode one subtree for a batch of rows.

    Returns (u_hat, partial codeword u_hat F^{(x)m}, undetermined flags), all (rows, m).
    """
    rows, m = llr.shape
    if frozen_mask.all():
        u = frozen_bits.copy()
        return u, butterfly(u), np.zeros((rows, m), dtype=bool)

    if m == 1:
        u = (llr < 0).astype(np.uint8)
        flags = llr == 0 if track_erasures else np.zeros((rows, 1), dtype=bool)
        return u, u.copy(), flags

    half = m // 2
    a = llr[:, :half]
    b = llr[:, half:]

    u_left, x_left, f_left = _decode_node(
        check(a, b), frozen_mask[:half], frozen_bits[:, :half], check, saturation, track_erasures
    )
    g = b + np.where(x_left == 1, -a, a)
    np.clip(g, -saturation, saturation, out=g)
    u_right, x_right, f_right = _decode_node(
        g, frozen_mask[half:], frozen_bits[:, half:], check, saturation, track_erasures
    )

    return (
        np.concatenate([u_left, u_right], axis=1),
        np.concatenate([x_left ^ x_right, x_right], axis=1),
        np.concatenate([f_left, f_right], axis=1),
    )


def decode_llr(
    llr: np.ndarray,
    spec: PolarCodeSpec,
    frozen_bits: Optional[np.ndarray] = None,
    kind: ChannelKind = ChannelKind.BSC,
) -> SCResult:
    """
    SC-decode a batch of channel LLR rows (rows, N) given in codeword order.

    Args:
        llr: channel evidence per received symbol
        spec: code whose frozen positions are used
        frozen_bits: optional per-row frozen values (rows, N); defaults to spec.frozen_bits
        kind: BEC switches to min-sum and flags undetermined information bits
    """
    llr = np.atleast_2d(np.asarray(llr, dtype=np.float64))
    rows, length = llr.shape
    if length != spec.length:
        raise InvalidArgumentError(f"observation length {length} does not match code length {spec.length}")

    if frozen_bits is None:
        frozen = np.broadcast_to(spec.frozen_bits, (rows, length))
    else:
        frozen = np.atleast_2d(np.asarray(frozen_bits, dtype=np.uint8))
        if frozen.shape != (rows, length):
            raise InvalidArgumentError(f"frozen_bits must have shape {(rows, length)}, got {frozen.shape}")

    mask = spec.frozen_mask
    frozen = np.where(mask, frozen, 0).astype(np.uint8)
    saturation = settings.LLR_SATURATION
    ordered = llr[:, bit_reversal_permutation(spec.n)]

    if kind == ChannelKind.BEC:
        u, _, flags = _decode_node(ordered, mask, frozen, boxplus_minsum, saturation, True)
        flags &= ~mask
    else:
        u, _, flags = _decode_node(ordered, mask, frozen, boxplus_exact, saturation, False)
    return SCResult(bits=u, undetermined=flags)


def _noiseless(obs: ChannelObservation) -> bool:
    if obs.kind == ChannelKind.BSC:
        return obs.p == 0.0
    return not (obs.symbols == ERASED).any()


def decode_batch(
    obs: ChannelObservation,
    spec: PolarCodeSpec,
    frozen_bits: Optional[np.ndarray] = None,
) -> SCResult:
    """
    SC-decode every row of a (rows, N) observation with one frozen-position set.

    A noiseless observation (BSC with p = 0, or BEC without erasures) is inverted
    directly through G_N^{-1} = G_N.
    """
    symbols = np.atleast_2d(obs.symbols)
    if symbols.shape[-1] != spec.length:
        raise InvalidArgumentError(
            f"observation length {symbols.shape[-1]} does not match code length {spec.length}"
        )

    if _noiseless(obs):
        rows = symbols.shape[0]
        frozen = spec.frozen_bits if frozen_bits is None else np.asarray(frozen_bits, dtype=np.uint8)
        u = polar_transform(symbols.astype(np.uint8))
        u = np.where(spec.frozen_mask, np.broadcast_to(frozen, (rows, spec.length)), u).astype(np.uint8)
        return SCResult(bits=u)

    if obs.kind == ChannelKind.BEC:
        llr = bec_llr(symbols)
    else:
        llr = bsc_llr(symbols, obs.p)
    return decode_llr(llr, spec, frozen_bits=frozen_bits, kind=obs.kind)


def sc_decode(obs: ChannelObservation, spec: PolarCodeSpec) -> SCResult:
    """
    Successive cancellation decoding of one observation (or a batch).

    Frozen positions take spec.frozen_bits; information positions follow the
    LLR sign with ties decided as 0. For BEC observations information bits left
    with zero evidence are returned as 0 and flagged in result.undetermined.

    Raises:
        InvalidArgumentError: observation length differs from the code length
    """
    if obs.length != spec.length:
        raise InvalidArgumentError(f"observation length {obs.length} does not match code length {spec.length}")
    result = decode_batch(obs, spec)
    if obs.symbols.ndim == 1:
        return SCResult(bits=result.bits[0], undetermined=result.undetermined[0])
    return result


__all__ = [
    "boxplus_exact",
    "boxplus_minsum",
    "bsc_llr",
    "bec_llr",
    "decode_llr",
    "decode_batch",
    "sc_decode",
]
