"""
Two-phase hierarchical encoder
Phase 1 encodes blockwise BEC codewords down each M column,
phase 2 assembles every row and applies G_N.
"""

from typing import Optional, Sequence

import numpy as np

from app.core.exceptions import InvalidArgumentError
from app.models.channel import Seed, SeedStream
from app.models.fading import CodewordMatrix, HierarchicalCode, HierMessage, SetPartition
from app.models.polar import PolarCodeSpec
from app.services.polar import polar_transform


def _blocks(msg: HierMessage, bec_specs: Sequence[PolarCodeSpec]) -> int:
    if bec_specs:
        return bec_specs[0].length
    return int(msg.row_messages.shape[0])


def encode_columns(values: np.ndarray, spec: PolarCodeSpec) -> np.ndarray:
    """
    Blockwise BEC codewords u~ = v G_B, one per row of `values`.

    Args:
        values: (columns, K) information bits
        spec: BEC code of length B

    Returns:
        (columns, B) codeword symbols
    """
    v = np.broadcast_to(spec.frozen_bits, (values.shape[0], spec.length)).copy()
    v[:, spec.info_set] = values
    return polar_transform(v)


def hier_encode(msg: HierMessage, partition: SetPartition, bec_specs: Sequence[PolarCodeSpec]) -> CodewordMatrix:
    """
    Encode a hierarchical message into a B x N codeword matrix.

    Columns are assigned to M positions in increasing index order and middle
    sets are consumed M_1, M_2, ...; the bad set is frozen to zero.

    Raises:
        InvalidArgumentError: message dimensions do not match the partition or BEC codes
    """
    levels = len(partition.middle)
    if len(bec_specs) != levels:
        raise InvalidArgumentError(f"expected {levels} BEC codes, got {len(bec_specs)}")
    if len(msg.column_messages) != levels:
        raise InvalidArgumentError(f"expected {levels} column message groups, got {len(msg.column_messages)}")

    blocks = _blocks(msg, bec_specs)
    if any(spec.length != blocks for spec in bec_specs):
        raise InvalidArgumentError("all BEC codes must share the block count B")
    expected = (blocks, int(partition.good.size))
    if msg.row_messages.shape != expected:
        raise InvalidArgumentError(f"row messages must have shape {expected}, got {msg.row_messages.shape}")

    u = np.zeros((blocks, partition.length), dtype=np.uint8)
    u[:, partition.good] = msg.row_messages

    for level, (positions, spec, values) in enumerate(zip(partition.middle, bec_specs, msg.column_messages), 1):
        expected = (int(positions.size), spec.dimension)
        if values.shape != expected:
            raise InvalidArgumentError(
                f"column messages of level {level} must have shape {expected}, got {values.shape}"
            )
        if positions.size:
            u[:, positions] = encode_columns(values, spec).T

    return CodewordMatrix(bits=polar_transform(u))


def random_message(code: HierarchicalCode, seed: Seed, blocks: Optional[int] = None) -> HierMessage:
    """Uniform information bits sized for `code`"""
    rng = seed.generator(SeedStream.MESSAGE)
    blocks = code.blocks if blocks is None else blocks
    rows = rng.integers(0, 2, size=(blocks, code.partition.good.size), dtype=np.uint8)
    columns = [
        rng.integers(0, 2, size=(positions.size, spec.dimension), dtype=np.uint8)
        for positions, spec in zip(code.partition.middle, code.bec_specs)
    ]
    return HierMessage(row_messages=rows, column_messages=columns)


def encode(msg: HierMessage, code: HierarchicalCode) -> CodewordMatrix:
    return hier_encode(msg, code.partition, code.bec_specs)


__all__ = ["encode_columns", "hier_encode", "random_message", "encode"]
