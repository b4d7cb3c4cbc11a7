"""
Code construction via the Bhattacharyya recursion
Z- = 2Z - Z^2 (computed as 1 - (1 - Z)^2), Z+ = Z^2
"""

import logging
from typing import Optional, Union

import numpy as np

from app.core.exceptions import DomainError, InvalidArgumentError
from app.models.polar import (
    ChannelKind,
    ConstructionRule,
    DesignChannel,
    PolarCodeSpec,
    SelectionRule,
)

logger = logging.getLogger(__name__)


def initial_bhattacharyya(channel: DesignChannel) -> float:
    """
    Z of the raw channel: e for BEC(e), 2 sqrt(p(1-p)) for BSC(p).

    The BSC value is evaluated as sqrt(1 - (1 - 2p)^2) so it is monotone in p
    under floating point too.
    """
    if channel.kind == ChannelKind.BEC:
        return channel.param
    return float(np.sqrt(1.0 - (1.0 - 2.0 * channel.param) ** 2))


def construct_reliabilities(n: int, channel: DesignChannel) -> np.ndarray:
    """
    Bhattacharyya parameter of every synthesized channel W_N^{(i)}, natural index order.

    Exact for BEC (erasure probabilities); an upper bound for BSC. A worse
    channel gives a pointwise larger vector.

    Args:
        n: log2 of the block length
        channel: design channel

    Returns:
        Read-only float64 vector of length 2^n with values in [0, 1]
    """
    if n < 0:
        raise DomainError(f"n must be non-negative, got {n}")

    z = np.array([initial_bhattacharyya(channel)], dtype=np.float64)
    for _ in range(n):
        nxt = np.empty(2 * z.size, dtype=np.float64)
        nxt[0::2] = 1.0 - (1.0 - z) ** 2
        nxt[1::2] = z * z
        z = nxt
    z.setflags(write=False)
    return z


def select_info_set(reliability: np.ndarray, rule: ConstructionRule) -> np.ndarray:
    """
    Pick information indices from a reliability vector.

    THRESHOLD(delta) returns {i : Z_i <= delta}; TOP_K(K) returns the K indices with
    smallest Z, ties going to the lowest index. Result is sorted ascending.
    """
    reliability = np.asarray(reliability, dtype=np.float64)
    if rule.rule == SelectionRule.THRESHOLD:
        return np.flatnonzero(reliability <= rule.value)

    k = int(rule.value)
    if k > reliability.size:
        raise InvalidArgumentError(f"K={k} exceeds block length {reliability.size}")
    order = np.argsort(reliability, kind="stable")
    return np.sort(order[:k])


def build_code(
    n: int,
    channel: DesignChannel,
    rule: ConstructionRule,
    frozen_bits: Optional[np.ndarray] = None,
) -> PolarCodeSpec:
    """
    Construct a polar code for a design channel; frozen values default to all zeros
    """
    reliability = construct_reliabilities(n, channel)
    info_set = select_info_set(reliability, rule)
    if frozen_bits is None:
        frozen_bits = np.zeros(1 << n, dtype=np.uint8)
    spec = PolarCodeSpec(
        n=n,
        info_set=info_set,
        frozen_bits=frozen_bits,
        reliability=reliability,
        rule=rule,
    )
    logger.debug(
        "polar code constructed",
        extra={"N": spec.length, "K": spec.dimension, "channel": channel.kind.value, "param": channel.param},
    )
    return spec


def union_bound(reliability: np.ndarray, info_set: Union[np.ndarray, list]) -> float:
    """Sum of Z over the information set, an upper bound on SC block error probability"""
    return float(np.sum(np.asarray(reliability)[np.asarray(info_set, dtype=np.int64)]))


__all__ = [
    "initial_bhattacharyya",
    "construct_reliabilities",
    "select_info_set",
    "build_code",
    "union_bound",
]
