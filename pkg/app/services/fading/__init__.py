"""Hierarchical polar coding over the block-fading BSC"""

from app.services.fading.decoder import HierarchicalDecoder, hier_decode
from app.services.fading.encoder import encode_columns, hier_encode, random_message
from app.services.fading.partition import (
    bec_code_dimension,
    build_bec_codes,
    build_hierarchical_code,
    erasure_probabilities,
    partition_indices,
)
from app.services.fading.rates import ergodic_capacity_bsc, theoretical_rate
from app.services.fading.simulation import simulate_trial

__all__ = [
    "partition_indices",
    "erasure_probabilities",
    "bec_code_dimension",
    "build_bec_codes",
    "build_hierarchical_code",
    "hier_encode",
    "encode_columns",
    "random_message",
    "HierarchicalDecoder",
    "hier_decode",
    "theoretical_rate",
    "ergodic_capacity_bsc",
    "simulate_trial",
]
