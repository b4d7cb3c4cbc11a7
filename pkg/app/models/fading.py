"""
Fading BSC domain types - channel profile, index partition, codeword matrix,
hierarchical message and decode reports.
"""

from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from app.models.polar import ERASED, ConstructionRule, PolarCodeSpec

PROBABILITY_TOLERANCE = 1e-12


def check_distribution(values) -> Tuple[float, ...]:
    """Strictly positive probabilities summing to one within tolerance"""
    values = tuple(float(v) for v in values)
    if not values:
        raise ValueError("at least one state is required")
    if any(v <= 0.0 for v in values):
        raise ValueError("state probabilities must be strictly positive")
    total = sum(values)
    if abs(total - 1.0) > PROBABILITY_TOLERANCE:
        raise ValueError(f"state probabilities must sum to 1, got {total:.12g}")
    return values


class FadingProfile(BaseModel):
    """
    Block-fading BSC: state s has crossover p_s and probability q_s.
    States are ordered from the most degraded (largest p) to the best.
    """
    model_config = ConfigDict(frozen=True, extra="forbid")

    crossovers: Tuple[float, ...] = Field(..., min_length=1)
    probabilities: Tuple[float, ...] = Field(..., min_length=1)

    @field_validator("crossovers")
    @classmethod
    def descending_crossovers(cls, v):
        if any(p < 0.0 or p > 0.5 for p in v):
            raise ValueError("crossover probabilities must lie in [0, 0.5]")
        if any(a < b for a, b in zip(v, v[1:])):
            raise ValueError("crossover probabilities must be non-increasing (degraded state first)")
        return v

    @field_validator("probabilities")
    @classmethod
    def valid_distribution(cls, v):
        return check_distribution(v)

    @model_validator(mode="after")
    def matching_lengths(self):
        if len(self.crossovers) != len(self.probabilities):
            raise ValueError("crossovers and probabilities must have the same number of states")
        return self

    @property
    def num_states(self) -> int:
        return len(self.crossovers)

    @property
    def states(self) -> List[Tuple[float, float]]:
        return list(zip(self.crossovers, self.probabilities))


@dataclass(frozen=True)
class SetPartition:
    """
    Index classes of the hierarchical scheme.

    info_sets[t] is A_{t+1}; good = A_1, middle[s-1] = M_s = A_{s+1} minus A_s,
    bad = complement of A_S. All index arrays are sorted ascending.
    """
    n: int
    good: np.ndarray
    middle: Tuple[np.ndarray, ...]
    bad: np.ndarray
    info_sets: Tuple[np.ndarray, ...]
    reliabilities: Tuple[np.ndarray, ...]
    rule: ConstructionRule

    @property
    def length(self) -> int:
        return 1 << self.n

    @property
    def num_states(self) -> int:
        return len(self.info_sets)

    def info_set(self, state: int) -> np.ndarray:
        """A_state for a 1-based state label"""
        return self.info_sets[state - 1]

    def middle_set(self, level: int) -> np.ndarray:
        """M_level for level in 1..S-1"""
        return self.middle[level - 1]

    @property
    def middle_sizes(self) -> List[int]:
        return [int(m.size) for m in self.middle]


@dataclass(frozen=True)
class HierarchicalCode:
    """Partition plus the blockwise BEC code used for every middle set"""
    partition: SetPartition
    bec_specs: Tuple[PolarCodeSpec, ...]
    profile: FadingProfile
    blocks: int

    @property
    def length(self) -> int:
        return self.partition.length

    @property
    def num_states(self) -> int:
        return self.partition.num_states


@dataclass
class CodewordMatrix:
    """
    B x N binary matrix, one row per fading block.
    block_states holds 1-based state labels and is set only after channel transit.
    """
    bits: np.ndarray
    block_states: Optional[np.ndarray] = None

    def __post_init__(self):
        self.bits = np.asarray(self.bits, dtype=np.uint8)
        if self.bits.ndim != 2:
            raise ValueError("codeword matrix must be two-dimensional (B x N)")
        if self.block_states is not None:
            self.block_states = np.asarray(self.block_states, dtype=np.int64)
            if self.block_states.shape != (self.bits.shape[0],):
                raise ValueError("block_states needs one label per row")

    @property
    def blocks(self) -> int:
        return int(self.bits.shape[0])

    @property
    def length(self) -> int:
        return int(self.bits.shape[1])


@dataclass
class HierMessage:
    """
    Information bits of one hierarchical codeword.

    row_messages: (B, |G|) per-block bits on the good set.
    column_messages[s-1]: (|M_s|, |A~_s|) blockwise bits carried by M_s columns.
    """
    row_messages: np.ndarray
    column_messages: List[np.ndarray]

    def __post_init__(self):
        self.row_messages = np.asarray(self.row_messages, dtype=np.uint8)
        self.column_messages = [np.asarray(c, dtype=np.uint8) for c in self.column_messages]

    @property
    def total_bits(self) -> int:
        return int(self.row_messages.size + sum(c.size for c in self.column_messages))

    def equals(self, other: "HierMessage") -> bool:
        if not np.array_equal(self.row_messages, other.row_messages):
            return False
        if len(self.column_messages) != len(other.column_messages):
            return False
        return all(np.array_equal(a, b) for a, b in zip(self.column_messages, other.column_messages))

    def bit_errors(self, other: "HierMessage") -> int:
        errors = int(np.count_nonzero(self.row_messages != other.row_messages))
        for a, b in zip(self.column_messages, other.column_messages):
            errors += int(np.count_nonzero(a != b))
        return errors


@dataclass
class ErasureColumn:
    """One M-index column across blocks: symbols in {0, 1, ERASED}"""
    index: int
    level: int
    symbols: np.ndarray

    @property
    def erased(self) -> np.ndarray:
        return self.symbols == ERASED


@dataclass(frozen=True)
class PhaseFailure:
    """A decoding unit that could not be resolved"""
    phase: int
    level: int  # middle-set level s
    unit: str  # "column"
    index: int  # position in M_s


@dataclass
class HierDecodeResult:
    """Decoded message plus the failure map of every phase"""
    message: HierMessage
    failures: List[PhaseFailure] = field(default_factory=list)
    phases: int = 0
    erasure_fractions: List[float] = field(default_factory=list)  # per middle level, s = 1..S-1

    @property
    def ok(self) -> bool:
        return not self.failures

    @property
    def first_failed_phase(self) -> Optional[int]:
        return min((f.phase for f in self.failures), default=None)


@dataclass(frozen=True)
class TrialOutcome:
    """One end-to-end trial of the hierarchical scheme"""
    trial: int
    success: bool
    bit_errors: int
    info_bits: int
    flagged: bool
    first_failed_phase: Optional[int] = None


__all__ = [
    "FadingProfile",
    "SetPartition",
    "HierarchicalCode",
    "CodewordMatrix",
    "HierMessage",
    "ErasureColumn",
    "PhaseFailure",
    "HierDecodeResult",
    "TrialOutcome",
    "check_distribution",
]
