"""Seeded channel models and capacity references"""

from app.services.channel.aen import average_snr, sample_aen_noise, sample_optimal_aen_input
from app.services.channel.bsc import bpsk_crossovers, bpsk_to_bsc, sample_block_states, transit_fading_bsc
from app.services.channel.capacity import (
    binary_convolution,
    binary_entropy,
    bsc_capacity,
    capacity_upper_bound_aen,
    ergodic_capacity_awgn_bpsk,
    mean_per_block_bound_aen,
)

__all__ = [
    "transit_fading_bsc",
    "sample_block_states",
    "bpsk_crossovers",
    "bpsk_to_bsc",
    "sample_aen_noise",
    "sample_optimal_aen_input",
    "average_snr",
    "binary_entropy",
    "binary_convolution",
    "bsc_capacity",
    "capacity_upper_bound_aen",
    "mean_per_block_bound_aen",
    "ergodic_capacity_awgn_bpsk",
]
