"""
Hierarchical (2S-1)-phase decoder for the block-fading BSC
"""

import logging
from typing import Dict, List, Sequence, Tuple

import numpy as np

from app.core.exceptions import InvalidArgumentError, PreconditionError
from app.models.fading import (
    CodewordMatrix,
    ErasureColumn,
    FadingProfile,
    HierarchicalCode,
    HierDecodeResult,
    HierMessage,
    PhaseFailure,
    SetPartition,
)
from app.models.polar import ERASED, ChannelObservation, PolarCodeSpec
from app.services.polar import decode_batch, polar_transform

logger = logging.getLogger(__name__)


class HierarchicalDecoder:
    """
    Decoder for one (partition, profile, BEC codes) triple

    Phase 1 decodes the rows of the best state S with A_S unknown. Then, for
    s = S-1 down to 1, the M_s columns are BEC-decoded across blocks (rows in
    states <= s are erased) and the state-s rows are decoded with M_s..M_{S-1}
    frozen to the recovered column symbols.
    """

    def __init__(self, partition: SetPartition, profile: FadingProfile, bec_specs: Sequence[PolarCodeSpec]):
        if partition.num_states != profile.num_states:
            raise InvalidArgumentError(
                f"partition has {partition.num_states} states, profile has {profile.num_states}"
            )
        if len(bec_specs) != len(partition.middle):
            raise InvalidArgumentError(f"expected {len(partition.middle)} BEC codes, got {len(bec_specs)}")

        self.partition = partition
        self.profile = profile
        self.bec_specs = tuple(bec_specs)
        self._row_codes: Dict[int, PolarCodeSpec] = {}

    @classmethod
    def for_code(cls, code: HierarchicalCode) -> "HierarchicalDecoder":
        return cls(code.partition, code.profile, code.bec_specs)

    @property
    def num_states(self) -> int:
        return self.profile.num_states

    def row_code(self, state: int) -> PolarCodeSpec:
        """Polar code with A_state as information set and the bad set frozen to zero"""
        if state not in self._row_codes:
            self._row_codes[state] = PolarCodeSpec(
                n=self.partition.n,
                info_set=self.partition.info_set(state),
                frozen_bits=np.zeros(self.partition.length, dtype=np.uint8),
                reliability=self.partition.reliabilities[state - 1],
                rule=self.partition.rule,
            )
        return self._row_codes[state]

    def erasure_columns(self, level: int, u_hat: np.ndarray, states: np.ndarray) -> List[ErasureColumn]:
        """Columns of M_level with rows in states <= level erased"""
        positions = self.partition.middle_set(level)
        symbols = np.where((states > level)[:, None], u_hat[:, positions].astype(np.int8), np.int8(ERASED))
        return [
            ErasureColumn(index=int(k), level=level, symbols=symbols[:, j].astype(np.int8))
            for j, k in enumerate(positions)
        ]

    def decode_columns(
        self,
        level: int,
        columns: np.ndarray,
        phase: int = 0,
    ) -> Tuple[np.ndarray, np.ndarray, List[PhaseFailure]]:
        """
        BEC-decode the (|M_level|, B) column symbols of one middle level.

        Returns:
            (v_hat, u_tilde, failures): decoded blockwise messages (columns, K),
            re-encoded column codewords (columns, B) and one failure per column
            with an undetermined information bit
        """
        spec = self.bec_specs[level - 1]
        positions = self.partition.middle_set(level)
        if columns.shape != (positions.size, spec.length):
            raise InvalidArgumentError(
                f"level {level} columns must have shape {(positions.size, spec.length)}, got {columns.shape}"
            )
        if positions.size == 0:
            empty = np.zeros((0, spec.length), dtype=np.uint8)
            return np.zeros((0, spec.dimension), dtype=np.uint8), empty, []

        result = decode_batch(ChannelObservation.bec(columns), spec)
        failures = [
            PhaseFailure(phase=phase, level=level, unit="column", index=int(positions[j]))
            for j in np.flatnonzero(~result.ok)
        ]
        return result.bits[:, spec.info_set], polar_transform(result.bits), failures

    def decode_rows(self, state: int, received: np.ndarray, frozen: np.ndarray) -> np.ndarray:
        """SC-decode the rows of one state with per-row frozen values"""
        if received.shape[0] == 0:
            return np.zeros((0, self.partition.length), dtype=np.uint8)
        obs = ChannelObservation.bsc(received, self.profile.crossovers[state - 1])
        return decode_batch(obs, self.row_code(state), frozen_bits=frozen).bits

    def decode(self, received: CodewordMatrix) -> HierDecodeResult:
        """
        Run all 2S-1 phases.

        Raises:
            PreconditionError: received carries no block states
            InvalidArgumentError: matrix shape does not fit the code
        """
        if received.block_states is None:
            raise PreconditionError("hierarchical decoding needs per-block state labels (CSI at the decoder)")
        states = received.block_states
        if received.length != self.partition.length:
            raise InvalidArgumentError(f"row length {received.length} does not match N={self.partition.length}")
        if self.bec_specs and received.blocks != self.bec_specs[0].length:
            raise InvalidArgumentError(f"{received.blocks} blocks received, BEC codes expect {self.bec_specs[0].length}")
        if ((states < 1) | (states > self.num_states)).any():
            raise InvalidArgumentError(f"block states must lie in 1..{self.num_states}")

        big_s = self.num_states
        y = received.bits
        u_hat = np.zeros((received.blocks, self.partition.length), dtype=np.uint8)
        recovered: Dict[int, np.ndarray] = {}
        column_messages: Dict[int, np.ndarray] = {}
        failures: List[PhaseFailure] = []
        erasure_fractions: Dict[int, float] = {}

        rows = np.flatnonzero(states == big_s)
        u_hat[rows] = self.decode_rows(big_s, y[rows], np.zeros((rows.size, self.partition.length), dtype=np.uint8))
        phase = 1

        for level in range(big_s - 1, 0, -1):
            phase += 1
            erased = states <= level
            erasure_fractions[level] = float(erased.mean()) if erased.size else 0.0
            columns = self.erasure_columns(level, u_hat, states)
            columns = (
                np.stack([c.symbols for c in columns])
                if columns
                else np.zeros((0, received.blocks), dtype=np.int8)
            )
            v_hat, u_tilde, level_failures = self.decode_columns(level, columns, phase)
            column_messages[level] = v_hat
            recovered[level] = u_tilde.T
            failures.extend(level_failures)

            phase += 1
            rows = np.flatnonzero(states == level)
            frozen = np.zeros((rows.size, self.partition.length), dtype=np.uint8)
            for t in range(level, big_s):
                frozen[:, self.partition.middle_set(t)] = recovered[t][rows]
            u_hat[rows] = self.decode_rows(level, y[rows], frozen)

        message = HierMessage(
            row_messages=u_hat[:, self.partition.good],
            column_messages=[column_messages[s] for s in range(1, big_s)],
        )
        if failures:
            logger.debug(
                "hierarchical decode left undetermined columns",
                extra={"failures": len(failures), "first_phase": min(f.phase for f in failures)},
            )
        return HierDecodeResult(
            message=message,
            failures=failures,
            phases=phase,
            erasure_fractions=[erasure_fractions[s] for s in range(1, big_s)],
        )


def hier_decode(
    received: CodewordMatrix,
    partition: SetPartition,
    profile: FadingProfile,
    bec_specs: Sequence[PolarCodeSpec],
) -> HierDecodeResult:
    """Convenience wrapper building a HierarchicalDecoder for a single call"""
    return HierarchicalDecoder(partition, profile, bec_specs).decode(received)


__all__ = ["HierarchicalDecoder", "hier_decode"]
