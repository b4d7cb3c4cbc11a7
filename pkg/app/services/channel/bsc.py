"""
Block-fading BSC transit and the BPSK-over-AWGN hard-decision reduction
"""

import logging

import numpy as np
from scipy.special import erfc

from app.models.channel import AwgnFadingProfile, Seed, SeedStream
from app.models.fading import CodewordMatrix, FadingProfile

logger = logging.getLogger(__name__)


def sample_block_states(probabilities, blocks: int, seed: Seed) -> np.ndarray:
    """One 1-based state label per block, drawn i.i.d. from q"""
    rng = seed.generator(SeedStream.STATE)
    q = np.asarray(probabilities, dtype=np.float64)
    return rng.choice(q.size, size=blocks, p=q / q.sum()).astype(np.int64) + 1


def transit_fading_bsc(x: CodewordMatrix, profile: FadingProfile, seed: Seed) -> CodewordMatrix:
    """
    Send every row of x through BSC(p_s) for an independently drawn state s.

    Row b draws its flips from its own substream, so the realization of a row
    does not depend on how many rows are sampled or in which order.
    """
    states = sample_block_states(profile.probabilities, x.blocks, seed)
    crossovers = np.asarray(profile.crossovers, dtype=np.float64)
    y = x.bits.copy()

    for b in range(x.blocks):
        p = crossovers[states[b] - 1]
        if p == 0.0:
            continue
        flips = seed.generator(SeedStream.FLIP, b).random(x.length) < p
        y[b] ^= flips.astype(np.uint8)

    logger.debug(
        "fading BSC transit",
        extra={"blocks": x.blocks, "length": x.length, "state_counts": np.bincount(states).tolist()},
    )
    return CodewordMatrix(bits=y, block_states=states)


def bpsk_crossovers(profile: AwgnFadingProfile) -> np.ndarray:
    """p_s = 1 - Phi(h_s sqrt(SNR)) = erfc(h_s sqrt(SNR) / sqrt 2) / 2, in profile order"""
    amplitude = np.asarray(profile.gains, dtype=np.float64) * np.sqrt(profile.snr)
    return np.minimum(0.5 * erfc(amplitude / np.sqrt(2.0)), 0.5)


def bpsk_to_bsc(profile: AwgnFadingProfile) -> FadingProfile:
    """
    Reduce fading AWGN with BPSK and hard decisions to a fading BSC.

    States are reordered by descending crossover; states with identical
    crossover are merged and their probabilities summed.
    """
    p = bpsk_crossovers(profile)
    q = np.asarray(profile.probabilities, dtype=np.float64)

    merged = {}
    for p_s, q_s in zip(p.tolist(), q.tolist()):
        merged[p_s] = merged.get(p_s, 0.0) + q_s
    crossovers = sorted(merged, reverse=True)
    probabilities = [merged[c] for c in crossovers]
    # renormalise the merged sums so rounding cannot break the distribution check
    total = sum(probabilities)
    return FadingProfile(
        crossovers=tuple(crossovers),
        probabilities=tuple(v / total for v in probabilities),
    )


__all__ = ["sample_block_states", "transit_fading_bsc", "bpsk_crossovers", "bpsk_to_bsc"]
