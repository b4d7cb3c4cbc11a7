"""
Experiment configuration - JSON run files validated with pydantic
Unknown fields are rejected; every error carries a dotted field path.
"""

import enum
from typing import List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from app.core.config import settings
from app.models.channel import SEED_MAX, AenProfile, AwgnFadingProfile
from app.models.fading import FadingProfile, check_distribution


class ExperimentKind(str, enum.Enum):
    """Reproducible experiments the harness can run"""
    BSC_SIM = "bsc-sim"
    BSC_RATE = "bsc-rate"
    AEN_RATE = "aen-rate"
    AEN_SIM = "aen-sim"
    EXPANSION_ANALYSIS = "expansion-analysis"


class _Section(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


class AwgnChannelConfig(_Section):
    gains: Tuple[float, ...] = Field(..., min_length=1)
    probabilities: Tuple[float, ...] = Field(..., min_length=1)
    snr_db: float

    @field_validator("gains")
    @classmethod
    def positive_gains(cls, v):
        if any(h <= 0.0 for h in v):
            raise ValueError("gains must be positive")
        return v

    @field_validator("probabilities")
    @classmethod
    def valid_distribution(cls, v):
        return check_distribution(v)

    @model_validator(mode="after")
    def matching_lengths(self):
        if len(self.gains) != len(self.probabilities):
            raise ValueError("gains and probabilities must have the same number of states")
        return self

    def to_profile(self) -> AwgnFadingProfile:
        return AwgnFadingProfile.from_db(self.gains, self.probabilities, self.snr_db)


class AenChannelConfig(_Section):
    noise_means: Tuple[float, ...] = Field(..., min_length=1)
    probabilities: Tuple[float, ...] = Field(..., min_length=1)
    input_mean: float = Field(1000.0, gt=0.0)

    @field_validator("noise_means")
    @classmethod
    def positive_means(cls, v):
        if any(m <= 0.0 for m in v):
            raise ValueError("noise means must be positive")
        return v

    @field_validator("probabilities")
    @classmethod
    def valid_distribution(cls, v):
        return check_distribution(v)

    @model_validator(mode="after")
    def matching_lengths(self):
        if len(self.noise_means) != len(self.probabilities):
            raise ValueError("noise_means and probabilities must have the same number of states")
        return self

    def to_profile(self) -> AenProfile:
        return AenProfile(noise_means=self.noise_means, probabilities=self.probabilities, input_mean=self.input_mean)


class CodeConfig(_Section):
    n: int = Field(10, ge=0, le=20)
    blocks: int = Field(256, ge=1)
    delta: float = Field(settings.DEFAULT_DELTA, gt=0.0, lt=1.0)
    bec_backoff: float = Field(settings.DEFAULT_BEC_BACKOFF, ge=0.0, lt=1.0)
    l1: int = Field(settings.DEFAULT_L1, ge=0)
    l2: int = Field(settings.DEFAULT_L2, ge=0)
    active_cut: float = Field(settings.ACTIVE_LEVEL_CUT, gt=0.0, le=0.5)
    active_levels: Optional[List[int]] = None

    @field_validator("blocks")
    @classmethod
    def power_of_two(cls, v):
        if v & (v - 1):
            raise ValueError("blocks must be a power of two")
        return v

    @model_validator(mode="after")
    def digits_fit(self):
        if self.l1 + self.l2 + 1 > 62:
            raise ValueError("l1 + l2 + 1 must not exceed 62 levels")
        return self


class SweepConfig(_Section):
    n_values: List[int] = Field(default_factory=lambda: [8, 10, 12, 14])
    snr_db: List[float] = Field(default_factory=lambda: [float(v) for v in range(0, 45, 5)])
    rate: float = Field(1.0, gt=0.0)  # exponential rate for the level-parameter curve
    min_level: int = -20
    max_level: int = 20
    epsilon: Optional[float] = Field(None, gt=0.0, lt=1.0)

    @field_validator("n_values")
    @classmethod
    def valid_lengths(cls, v):
        if any(n < 0 or n > 20 for n in v):
            raise ValueError("n values must lie in [0, 20]")
        return v

    @model_validator(mode="after")
    def ordered_levels(self):
        if self.min_level > self.max_level:
            raise ValueError("min_level must not exceed max_level")
        return self


class OutputConfig(_Section):
    dir: str = settings.OUTPUT_DIR


class ExperimentConfig(_Section):
    """
    One run of the harness: experiment kind, channel, code parameters, sweep,
    trial count, seed and output location.
    """
    kind: ExperimentKind
    bsc: Optional[FadingProfile] = None
    awgn: Optional[AwgnChannelConfig] = None
    aen: Optional[AenChannelConfig] = None
    code: CodeConfig = Field(default_factory=CodeConfig)
    sweep: SweepConfig = Field(default_factory=SweepConfig)
    trials: int = Field(100, ge=1)
    seed: int = Field(settings.DEFAULT_SEED, ge=0, le=SEED_MAX)
    abort_bler: float = Field(settings.ABORT_BLER, ge=0.0, le=1.0)
    output: OutputConfig = Field(default_factory=OutputConfig)

    @model_validator(mode="after")
    def channel_matches_kind(self):
        if self.kind in (ExperimentKind.BSC_SIM, ExperimentKind.BSC_RATE):
            if (self.bsc is None) == (self.awgn is None):
                raise ValueError(f"{self.kind.value} needs exactly one of 'bsc' or 'awgn'")
        if self.kind in (ExperimentKind.AEN_RATE, ExperimentKind.AEN_SIM) and self.aen is None:
            raise ValueError(f"{self.kind.value} needs an 'aen' channel section")
        return self


__all__ = [
    "ExperimentKind",
    "AwgnChannelConfig",
    "AenChannelConfig",
    "CodeConfig",
    "SweepConfig",
    "OutputConfig",
    "ExperimentConfig",
]
