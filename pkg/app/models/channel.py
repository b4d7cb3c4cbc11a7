"""
Channel model types - seeds and random streams, fading AWGN and fading AEN profiles
"""

import enum
from dataclasses import dataclass
from typing import Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from app.core.exceptions import DomainError
from app.models.fading import check_distribution

SEED_MAX = (1 << 64) - 1


class SeedStream(enum.IntEnum):
    """Independent random streams derived from one seed"""
    STATE = 1  # block state labels
    FLIP = 2  # BSC bit flips, one substream per row
    NOISE = 3  # exponential noise, one substream per row
    MESSAGE = 4  # random information bits
    TRIAL = 5  # per-trial child seeds
    INPUT = 6  # analog input samples


@dataclass(frozen=True)
class Seed:
    """
    64-bit seed for Philox counter-based streams.

    Every (stream, coordinates) pair maps to its own generator, so rows can be
    sampled in any order or in parallel with identical results.
    """
    value: int

    def __post_init__(self):
        if not 0 <= int(self.value) <= SEED_MAX:
            raise DomainError(f"seed must be a 64-bit unsigned integer, got {self.value}")
        object.__setattr__(self, "value", int(self.value))

    def sequence(self, stream: SeedStream, *coords: int) -> np.random.SeedSequence:
        return np.random.SeedSequence(entropy=self.value, spawn_key=(int(stream), *map(int, coords)))

    def generator(self, stream: SeedStream, *coords: int) -> np.random.Generator:
        return np.random.Generator(np.random.Philox(self.sequence(stream, *coords)))

    def derive(self, stream: SeedStream, *coords: int) -> "Seed":
        state = self.sequence(stream, *coords).generate_state(1, dtype=np.uint64)
        return Seed(int(state[0]))

    def child(self, index: int) -> "Seed":
        """Seed of trial `index`; deterministic in (value, index)"""
        return self.derive(SeedStream.TRIAL, index)


class AwgnFadingProfile(BaseModel):
    """
    Block-fading AWGN with BPSK: state s has amplitude gain h_s and probability q_s.
    snr is the linear ratio P_X / P_Z.
    """
    model_config = ConfigDict(frozen=True, extra="forbid")

    gains: Tuple[float, ...] = Field(..., min_length=1)
    probabilities: Tuple[float, ...] = Field(..., min_length=1)
    snr: float = Field(..., gt=0.0)

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

    @classmethod
    def from_db(cls, gains, probabilities, snr_db: float) -> "AwgnFadingProfile":
        return cls(gains=tuple(gains), probabilities=tuple(probabilities), snr=10.0 ** (snr_db / 10.0))


class AenProfile(BaseModel):
    """
    Block-fading additive exponential noise channel.
    State s has noise mean E_Zs with probability q_s; input mean is E_X.
    """
    model_config = ConfigDict(frozen=True, extra="forbid")

    noise_means: Tuple[float, ...] = Field(..., min_length=1)
    probabilities: Tuple[float, ...] = Field(..., min_length=1)
    input_mean: float = Field(..., gt=0.0)

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

    @property
    def num_states(self) -> int:
        return len(self.noise_means)

    @property
    def states(self):
        return list(zip(self.noise_means, self.probabilities))

    @property
    def average_noise_mean(self) -> float:
        return float(np.dot(self.noise_means, self.probabilities))

    @property
    def average_snr(self) -> float:
        """E_X over the state-averaged noise mean"""
        return self.input_mean / self.average_noise_mean

    @property
    def state_snrs(self) -> Tuple[float, ...]:
        return tuple(self.input_mean / m for m in self.noise_means)

    def with_input_mean(self, input_mean: float) -> "AenProfile":
        return self.model_copy(update={"input_mean": float(input_mean)})

    def with_average_snr_db(self, snr_db: float) -> "AenProfile":
        return self.with_input_mean(10.0 ** (snr_db / 10.0) * self.average_noise_mean)


__all__ = ["Seed", "SeedStream", "AwgnFadingProfile", "AenProfile", "SEED_MAX"]
