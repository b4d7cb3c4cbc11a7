"""
Fading additive exponential noise sampling
"""

import logging
from typing import Tuple

import numpy as np

from app.core.exceptions import DomainError
from app.models.channel import AenProfile, Seed, SeedStream
from app.services.channel.bsc import sample_block_states

logger = logging.getLogger(__name__)


def _exponential(rng: np.random.Generator, mean: float, size) -> np.ndarray:
    # inverse CDF: Z = -E ln(1 - U), U uniform on [0, 1)
    return -mean * np.log1p(-rng.random(size))


def sample_aen_noise(profile: AenProfile, blocks: int, length: int, seed: Seed) -> Tuple[np.ndarray, np.ndarray]:
    """
    Draw a (blocks, length) noise matrix for the fading AEN channel.

    Returns:
        (noise, block_states): non-negative noise with i.i.d. exponential entries
        of the block's state mean, and the 1-based state label of every block
    """
    if blocks < 0 or length < 0:
        raise DomainError("noise matrix dimensions must be non-negative")
    states = sample_block_states(profile.probabilities, blocks, seed)
    means = np.asarray(profile.noise_means, dtype=np.float64)

    noise = np.empty((blocks, length), dtype=np.float64)
    for b in range(blocks):
        noise[b] = _exponential(seed.generator(SeedStream.NOISE, b), means[states[b] - 1], length)
    return noise, states


def sample_optimal_aen_input(input_mean: float, noise_mean: float, size, seed: Seed) -> np.ndarray:
    """
    Capacity-achieving input of the AEN channel with noise mean E_Z.

    X = 0 with probability E_Z / (E_X + E_Z), otherwise exponential with mean
    E_X + E_Z; X + Z is then exponential with mean E_X + E_Z.
    """
    if input_mean <= 0.0 or noise_mean <= 0.0:
        raise DomainError("input and noise means must be positive")
    rng = seed.generator(SeedStream.INPUT)
    total = input_mean + noise_mean
    active = rng.random(size) >= noise_mean / total
    return np.where(active, _exponential(rng, total, size), 0.0)


def average_snr(profile: AenProfile) -> float:
    """E_X / sum_s q_s E_Zs"""
    return profile.average_snr


__all__ = ["sample_aen_noise", "sample_optimal_aen_input", "average_snr"]
