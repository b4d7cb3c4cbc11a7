"""
Expansion coding domain types - level parameters, level plans and reports
Level l runs over -L1..L2; array position j holds level j - L1.
"""

import enum
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from app.core.exceptions import InvalidArgumentError
from app.models.fading import FadingProfile


class LevelMode(str, enum.Enum):
    """How a level is used for transmission"""
    ACTIVE_UNIFORM = "active-uniform"  # carries a uniform hierarchical polar codeword
    FROZEN_ZERO = "frozen-zero"  # transmits constant 0


@dataclass(frozen=True)
class ExpansionSpec:
    """
    Per-level Bernoulli parameters of an expanded fading AEN channel.

    input_bias[j] = p_l, noise_bias[j, s-1] = p~_{l,s}, with states in the
    order of the AEN profile.
    """
    l1: int
    l2: int
    input_mean: float
    noise_means: Tuple[float, ...]
    state_probabilities: Tuple[float, ...]
    input_bias: np.ndarray
    noise_bias: np.ndarray

    def __post_init__(self):
        for name in ("input_bias", "noise_bias"):
            value = np.array(getattr(self, name), dtype=np.float64)
            value.setflags(write=False)
            object.__setattr__(self, name, value)
        if self.input_bias.shape != (self.num_levels,):
            raise InvalidArgumentError("input_bias needs one entry per level")
        if self.noise_bias.shape != (self.num_levels, len(self.noise_means)):
            raise InvalidArgumentError("noise_bias needs one row per level and one column per state")

    @property
    def levels(self) -> np.ndarray:
        return np.arange(-self.l1, self.l2 + 1, dtype=np.int64)

    @property
    def num_levels(self) -> int:
        return self.l1 + self.l2 + 1

    @property
    def num_states(self) -> int:
        return len(self.noise_means)

    @property
    def achieved_mean(self) -> float:
        """sum_l 2^l p_l"""
        return float(np.dot(np.exp2(self.levels.astype(np.float64)), self.input_bias))

    def index(self, level: int) -> int:
        if not -self.l1 <= level <= self.l2:
            raise InvalidArgumentError(f"level {level} outside [-{self.l1}, {self.l2}]")
        return int(level) + self.l1


@dataclass(frozen=True)
class LevelPlan:
    """
    Transmission plan: a mode per level plus the fading BSC seen by each level.

    Level profiles list states by descending noise mean so their crossovers
    descend; state_rank maps an AEN state label to its label in those profiles.
    """
    spec: ExpansionSpec
    modes: Tuple[LevelMode, ...]

    def __post_init__(self):
        if len(self.modes) != self.spec.num_levels:
            raise InvalidArgumentError("plan needs one mode per level")

    @property
    def state_order(self) -> np.ndarray:
        return np.argsort(-np.asarray(self.spec.noise_means), kind="stable")

    @property
    def state_rank(self) -> np.ndarray:
        """state_rank[s-1] is the level-profile label of AEN state s"""
        rank = np.empty(self.spec.num_states, dtype=np.int64)
        rank[self.state_order] = np.arange(1, self.spec.num_states + 1)
        return rank

    def mode(self, level: int) -> LevelMode:
        return self.modes[self.spec.index(level)]

    @property
    def active_levels(self) -> List[int]:
        return [int(l) for l, m in zip(self.spec.levels, self.modes) if m == LevelMode.ACTIVE_UNIFORM]

    def level_profile(self, level: int) -> FadingProfile:
        """Fading BSC {(p~_{l,s}, q_s)} of one level"""
        order = self.state_order
        row = self.spec.noise_bias[self.spec.index(level)]
        q = np.asarray(self.spec.state_probabilities)
        return FadingProfile(crossovers=tuple(row[order].tolist()), probabilities=tuple(q[order].tolist()))

    @property
    def achieved_mean(self) -> float:
        """Input mean of uniform active levels: sum over active l of 2^l / 2"""
        return float(sum(2.0 ** l for l in self.active_levels) / 2.0)

    def with_active(self, levels: Sequence[int]) -> "LevelPlan":
        """Same spec with exactly `levels` active"""
        active = {self.spec.index(l) for l in levels}
        modes = tuple(
            LevelMode.ACTIVE_UNIFORM if j in active else LevelMode.FROZEN_ZERO
            for j in range(self.spec.num_levels)
        )
        return LevelPlan(spec=self.spec, modes=modes)


@dataclass(frozen=True)
class ExpansionDigits:
    """
    Fixed-point digits of non-negative values over levels -L1..L2.

    value = reassemble(bits) + overflow + residual, residual in [0, 2^-L1).
    """
    bits: np.ndarray  # (..., L1 + L2 + 1), position j is level j - L1
    residual: np.ndarray
    overflow: np.ndarray

    @property
    def overflowed(self) -> np.ndarray:
        return self.overflow > 0


@dataclass(frozen=True)
class AdderResult:
    """Ripple-carry sum; carries[..., j] is the carry into level j - L1"""
    bits: np.ndarray
    carries: np.ndarray
    carry_out: np.ndarray


@dataclass(frozen=True)
class TailBounds:
    """Entropy bounds on H(p~) at one level; None where no bound applies"""
    level: int
    eta: float
    upper: Optional[float]
    lower: Optional[float]


@dataclass(frozen=True)
class GapGuaranteeReport:
    """Finite-level capacity-gap guarantee evaluated for one profile"""
    precondition_ok: bool
    holds: Optional[bool]
    lhs: Optional[float]
    rhs: Optional[float]
    l1: Optional[int]
    l2: Optional[int]
    epsilon: float
    bound: float

    @property
    def gap(self) -> Optional[float]:
        return None if self.lhs is None else self.bound - self.lhs

    def to_dict(self) -> dict:
        return {
            "precondition_ok": self.precondition_ok,
            "holds": self.holds,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "L1": self.l1,
            "L2": self.l2,
            "epsilon": self.epsilon,
            "bound": self.bound,
        }


@dataclass
class AenTrialReport:
    """One end-to-end transmission of an expansion-coded block matrix"""
    level_success: Dict[int, bool] = field(default_factory=dict)
    level_info_bits: Dict[int, int] = field(default_factory=dict)
    first_failed_level: Optional[int] = None
    rate: float = 0.0  # information bits of all active levels per channel use
    delivered_rate: float = 0.0  # same, counting only levels decoded exactly
    overflow_count: int = 0
    empirical_input_mean: float = 0.0

    @property
    def success(self) -> bool:
        return self.first_failed_level is None

    @property
    def unreliable_levels(self) -> List[int]:
        """Levels decoded after the first failure, whose carries are suspect"""
        if self.first_failed_level is None:
            return []
        return [l for l in self.level_success if l > self.first_failed_level]


__all__ = [
    "LevelMode",
    "ExpansionSpec",
    "LevelPlan",
    "ExpansionDigits",
    "AdderResult",
    "TailBounds",
    "GapGuaranteeReport",
    "AenTrialReport",
]
