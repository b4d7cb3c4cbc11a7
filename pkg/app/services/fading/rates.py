"""
Rate accounting for the hierarchical scheme
"""

from typing import Optional, Sequence

import numpy as np

from app.models.fading import FadingProfile, SetPartition
from app.models.polar import PolarCodeSpec
from app.services.channel.capacity import bsc_capacity


def theoretical_rate(
    partition: SetPartition,
    bec_specs: Sequence[PolarCodeSpec],
    blocks: Optional[int] = None,
) -> float:
    """
    (B |G| + sum_s |M_s| |A~_s|) / (N B) in bits per channel use.

    B is read from the BEC codes; with no middle sets the rate is |G| / N.
    """
    if bec_specs:
        blocks = bec_specs[0].length
    blocks = blocks or 1
    carried = blocks * int(partition.good.size)
    carried += sum(int(m.size) * spec.dimension for m, spec in zip(partition.middle, bec_specs))
    return carried / (partition.length * blocks)


def ergodic_capacity_bsc(profile: FadingProfile) -> float:
    """sum_s q_s (1 - H(p_s))"""
    return float(np.dot(profile.probabilities, bsc_capacity(np.asarray(profile.crossovers))))


__all__ = ["theoretical_rate", "ergodic_capacity_bsc"]
