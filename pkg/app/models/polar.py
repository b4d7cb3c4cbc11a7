"""
Polar code domain types - bit vectors, code specs, channel observations.
Indices are 0-based everywhere: synthesized channel i of u_{1:N} is position i-1.
"""

import enum
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from app.core.exceptions import DomainError, InvalidArgumentError, InvalidLengthError

ERASED = -1  # erasure marker inside int8 observation arrays


class ChannelKind(str, enum.Enum):
    """Binary-input channels the construction and decoder understand"""
    BEC = "bec"
    BSC = "bsc"


class SelectionRule(str, enum.Enum):
    """How an information set was picked from a reliability vector"""
    THRESHOLD = "threshold"  # {i : Z_i <= delta}
    TOP_K = "top_k"  # K smallest Z_i, lowest index wins ties


@dataclass(frozen=True)
class DesignChannel:
    """
    Channel a code is designed for: BEC(e) or BSC(p)
    """
    kind: ChannelKind
    param: float

    def __post_init__(self):
        if self.kind == ChannelKind.BEC and not 0.0 <= self.param <= 1.0:
            raise DomainError(f"BEC erasure probability must be in [0, 1], got {self.param}")
        if self.kind == ChannelKind.BSC and not 0.0 <= self.param <= 0.5:
            raise DomainError(f"BSC crossover probability must be in [0, 0.5], got {self.param}")

    @classmethod
    def bec(cls, e: float) -> "DesignChannel":
        return cls(ChannelKind.BEC, float(e))

    @classmethod
    def bsc(cls, p: float) -> "DesignChannel":
        return cls(ChannelKind.BSC, float(p))


@dataclass(frozen=True)
class ConstructionRule:
    """Record of the rule that produced an information set"""
    rule: SelectionRule
    value: float  # delta for THRESHOLD, K for TOP_K

    @classmethod
    def threshold(cls, delta: float) -> "ConstructionRule":
        if not 0.0 < delta < 1.0:
            raise DomainError(f"threshold delta must be in (0, 1), got {delta}")
        return cls(SelectionRule.THRESHOLD, float(delta))

    @classmethod
    def top_k(cls, k: int) -> "ConstructionRule":
        if k < 0:
            raise InvalidArgumentError(f"K must be non-negative, got {k}")
        return cls(SelectionRule.TOP_K, int(k))


def as_bit_vector(bits, length: Optional[int] = None) -> np.ndarray:
    """
    Validate and freeze a binary vector (or a stack of them along the last axis)

    Returns a read-only uint8 array; raises DomainError on non-binary entries.
    """
    arr = np.asarray(bits)
    if arr.size and not np.isin(arr, (0, 1)).all():
        raise DomainError("bit vectors may only contain 0 and 1")
    arr = arr.astype(np.uint8, copy=True)
    if length is not None and arr.shape[-1] != length:
        raise InvalidLengthError(f"expected length {length}, got {arr.shape[-1]}")
    arr.setflags(write=False)
    return arr


def log2_length(length: int) -> int:
    """n such that length == 2**n; InvalidLengthError otherwise"""
    if length < 1 or length & (length - 1):
        raise InvalidLengthError(f"length must be a power of two, got {length}")
    return length.bit_length() - 1


@dataclass(frozen=True)
class PolarCodeSpec:
    """
    One polar code as a G_N-coset code: (N, information set, frozen values).

    frozen_bits has length N; entries at information positions are ignored
    and kept at 0.
    """
    n: int
    info_set: np.ndarray
    frozen_bits: np.ndarray
    reliability: np.ndarray
    rule: ConstructionRule

    def __post_init__(self):
        length = 1 << self.n
        info = np.unique(np.asarray(self.info_set, dtype=np.int64))
        if info.size and (info[0] < 0 or info[-1] >= length):
            raise InvalidArgumentError(f"information indices must lie in [0, {length})")
        rel = np.asarray(self.reliability, dtype=np.float64)
        if rel.shape != (length,):
            raise InvalidLengthError(f"reliability must have length {length}")
        if ((rel < 0.0) | (rel > 1.0)).any():
            raise DomainError("reliability values must lie in [0, 1]")
        frozen = as_bit_vector(self.frozen_bits, length).copy()
        frozen[info] = 0
        for name, value in (("info_set", info), ("frozen_bits", frozen), ("reliability", rel)):
            value.setflags(write=False)
            object.__setattr__(self, name, value)

    @property
    def length(self) -> int:
        return 1 << self.n

    @property
    def dimension(self) -> int:
        return int(self.info_set.size)

    @property
    def rate(self) -> float:
        return self.dimension / self.length

    @property
    def frozen_mask(self) -> np.ndarray:
        mask = np.ones(self.length, dtype=bool)
        mask[self.info_set] = False
        return mask

    @property
    def frozen_values(self) -> dict:
        """Frozen index -> bit, the map form of frozen_bits"""
        return {int(i): int(self.frozen_bits[i]) for i in np.flatnonzero(self.frozen_mask)}

    def __repr__(self) -> str:
        return f"<PolarCodeSpec N={self.length} K={self.dimension} rule={self.rule.rule.value}>"


@dataclass(frozen=True)
class ChannelObservation:
    """
    Received symbols y_{1:N} with the channel they came through.

    symbols may be a single vector (N,) or a batch (rows, N). For BSC the
    crossover probability p of the decoding channel is required.
    """
    kind: ChannelKind
    symbols: np.ndarray
    p: Optional[float] = None

    def __post_init__(self):
        raw = np.asarray(self.symbols)
        if raw.size and not np.isin(raw, (0, 1, ERASED)).all():
            raise DomainError("observation symbols must be 0, 1 or ERASED")
        sym = raw.astype(np.int8)
        if self.kind == ChannelKind.BSC:
            if self.p is None or not 0.0 <= self.p <= 0.5:
                raise DomainError(f"BSC observation needs p in [0, 0.5], got {self.p}")
            if (sym == ERASED).any():
                raise DomainError("BSC observations cannot contain erasures")
        sym.setflags(write=False)
        object.__setattr__(self, "symbols", sym)

    @property
    def length(self) -> int:
        return int(self.symbols.shape[-1])

    @classmethod
    def bsc(cls, symbols, p: float) -> "ChannelObservation":
        return cls(ChannelKind.BSC, symbols, float(p))

    @classmethod
    def bec(cls, symbols) -> "ChannelObservation":
        return cls(ChannelKind.BEC, symbols)


@dataclass(frozen=True)
class SCResult:
    """
    Output of successive cancellation decoding.

    bits is the decoded u (same leading shape as the observation);
    undetermined flags information positions whose evidence was exactly zero
    (BEC erasure patterns that leave the bit unresolved). Such positions hold 0.
    """
    bits: np.ndarray
    undetermined: np.ndarray = field(default=None)

    def __post_init__(self):
        if self.undetermined is None:
            object.__setattr__(self, "undetermined", np.zeros(self.bits.shape, dtype=bool))

    @property
    def ok(self) -> Union[bool, np.ndarray]:
        """True where no position is undetermined (per row for batches)"""
        flags = ~self.undetermined.any(axis=-1)
        return bool(flags) if flags.ndim == 0 else flags


__all__ = [
    "ERASED",
    "ChannelKind",
    "SelectionRule",
    "DesignChannel",
    "ConstructionRule",
    "PolarCodeSpec",
    "ChannelObservation",
    "SCResult",
    "as_bit_vector",
    "log2_length",
]
