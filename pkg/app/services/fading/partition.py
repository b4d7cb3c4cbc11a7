"""
Index partition of the hierarchical scheme and the blockwise BEC codes
"""

import logging
import math
from typing import List, Optional

import numpy as np

from app.core.config import settings
from app.core.exceptions import DomainError
from app.models.fading import FadingProfile, HierarchicalCode, SetPartition
from app.models.polar import ConstructionRule, DesignChannel, PolarCodeSpec, log2_length
from app.services.polar import build_code, construct_reliabilities, select_info_set

logger = logging.getLogger(__name__)


def partition_indices(n: int, profile: FadingProfile, delta: Optional[float] = None) -> SetPartition:
    """
    Split {0..N-1} into G, M_1..M_{S-1} and the bad set.

    A_s = {i : Z_i(p_s) <= delta} for every state; the states are ordered by
    descending crossover, so the reliability vectors dominate each other
    pointwise and A_1 <= A_2 <= ... <= A_S.

    Args:
        n: log2 of the row length N
        profile: fading BSC profile, most degraded state first
        delta: threshold on the Bhattacharyya parameter, defaults to settings.DEFAULT_DELTA

    Returns:
        SetPartition with good = A_1, middle[s-1] = A_{s+1} minus A_s, bad = complement of A_S
    """
    delta = settings.DEFAULT_DELTA if delta is None else delta
    rule = ConstructionRule.threshold(delta)
    length = 1 << n

    reliabilities = []
    info_sets = []
    for p in profile.crossovers:
        z = construct_reliabilities(n, DesignChannel.bsc(p))
        reliabilities.append(z)
        info_sets.append(select_info_set(z, rule))

    for smaller, larger in zip(info_sets, info_sets[1:]):
        if np.setdiff1d(smaller, larger).size:
            raise DomainError("information sets are not nested; states must be ordered by descending crossover")

    middle = tuple(np.setdiff1d(larger, smaller) for smaller, larger in zip(info_sets, info_sets[1:]))
    bad = np.setdiff1d(np.arange(length, dtype=np.int64), info_sets[-1])

    partition = SetPartition(
        n=n,
        good=info_sets[0],
        middle=middle,
        bad=bad,
        info_sets=tuple(info_sets),
        reliabilities=tuple(reliabilities),
        rule=rule,
    )
    logger.debug(
        "index partition built",
        extra={"N": length, "good": int(partition.good.size), "middle": partition.middle_sizes, "bad": int(bad.size)},
    )
    return partition


def erasure_probabilities(profile: FadingProfile) -> List[float]:
    """e_s = q_1 + ... + q_s for s = 1..S-1; empty for a single state"""
    if profile.num_states < 2:
        return []
    return np.cumsum(profile.probabilities)[:-1].tolist()


def bec_code_dimension(erasure: float, blocks: int, backoff: Optional[float] = None) -> int:
    """|A~_s| = floor((1 - e_s - backoff) B), never negative"""
    backoff = settings.DEFAULT_BEC_BACKOFF if backoff is None else backoff
    if not 0.0 <= erasure <= 1.0:
        raise DomainError(f"erasure probability must be in [0, 1], got {erasure}")
    if backoff < 0.0:
        raise DomainError(f"BEC back-off must be non-negative, got {backoff}")
    # small slack keeps exact products such as 0.25 * 256 from flooring one short
    return max(0, math.floor((1.0 - erasure - backoff) * blocks + 1e-9))


def build_bec_codes(blocks: int, profile: FadingProfile, backoff: Optional[float] = None) -> List[PolarCodeSpec]:
    """One top-K BEC(e_s) polar code of length B per middle level"""
    b = log2_length(blocks)
    codes = []
    for e in erasure_probabilities(profile):
        k = bec_code_dimension(e, blocks, backoff)
        codes.append(build_code(b, DesignChannel.bec(e), ConstructionRule.top_k(k)))
    return codes


def build_hierarchical_code(
    n: int,
    blocks: int,
    profile: FadingProfile,
    delta: Optional[float] = None,
    backoff: Optional[float] = None,
) -> HierarchicalCode:
    """Partition plus BEC codes for an N = 2^n row length and B blocks"""
    log2_length(blocks)
    partition = partition_indices(n, profile, delta)
    bec_specs = build_bec_codes(blocks, profile, backoff)
    return HierarchicalCode(partition=partition, bec_specs=tuple(bec_specs), profile=profile, blocks=blocks)


__all__ = [
    "partition_indices",
    "erasure_probabilities",
    "bec_code_dimension",
    "build_bec_codes",
    "build_hierarchical_code",
]
