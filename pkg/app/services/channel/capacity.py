"""
Closed-form capacity references for binary and exponential-noise channels
All rates are in bits per channel use.
"""

import numpy as np
from scipy.special import entr

from app.models.channel import AenProfile, AwgnFadingProfile
from app.services.channel.bsc import bpsk_crossovers

LOG2E = float(np.log2(np.e))


def binary_entropy(p):
    """H(p) in bits; H(0) = H(1) = 0. Accepts scalars or arrays."""
    p = np.asarray(p, dtype=np.float64)
    h = (entr(p) + entr(1.0 - p)) / np.log(2.0)
    return float(h) if h.ndim == 0 else h


def binary_convolution(p, q):
    """p * q = p(1 - q) + q(1 - p), the crossover of two cascaded BSCs"""
    p = np.asarray(p, dtype=np.float64)
    q = np.asarray(q, dtype=np.float64)
    out = q + p * (1.0 - 2.0 * q)
    return float(out) if out.ndim == 0 else out


def bsc_capacity(p):
    return 1.0 - binary_entropy(p)


def capacity_upper_bound_aen(profile: AenProfile) -> float:
    """
    Ergodic capacity bound of the fading AEN channel with CSI at the receiver:
    sum_s q_s log2(1 + E_X / E_Zs)
    """
    snrs = np.asarray(profile.state_snrs)
    return float(np.dot(profile.probabilities, np.log2(1.0 + snrs)))


def mean_per_block_bound_aen(profile: AenProfile) -> float:
    """Mean-per-block power constraint gives the same closed form"""
    return capacity_upper_bound_aen(profile)


def ergodic_capacity_awgn_bpsk(profile: AwgnFadingProfile) -> float:
    """Hard-decision capacity of BPSK over the fading AWGN channel"""
    p = bpsk_crossovers(profile)
    return float(np.dot(profile.probabilities, bsc_capacity(p)))


__all__ = [
    "LOG2E",
    "binary_entropy",
    "binary_convolution",
    "bsc_capacity",
    "capacity_upper_bound_aen",
    "mean_per_block_bound_aen",
    "ergodic_capacity_awgn_bpsk",
]
