"""
Level parameters of expansion coding and the rate analysis built on them
"""

import logging
import math
from typing import Optional

import numpy as np
import pandas as pd
from scipy.special import expit

from app.core.config import settings
from app.core.exceptions import ConstraintError, DomainError
from app.models.channel import AenProfile
from app.models.expansion import ExpansionSpec, LevelMode, LevelPlan, TailBounds, GapGuaranteeReport
from app.services.channel.capacity import LOG2E, binary_convolution, binary_entropy, capacity_upper_bound_aen

logger = logging.getLogger(__name__)

MEAN_TOLERANCE = 1e-12


def expansion_bernoulli_param(rate: float, level):
    """
    a_l = 1 / (1 + e^(rate 2^l)), the one-probability of level l of an
    exponential variable with parameter `rate`. Saturates to 0 for large levels.
    """
    if rate <= 0.0:
        raise DomainError(f"exponential rate must be positive, got {rate}")
    out = expit(-rate * np.exp2(np.asarray(level, dtype=np.float64)))
    return float(out) if out.ndim == 0 else out


def build_expansion_spec(profile: AenProfile, l1: Optional[int] = None, l2: Optional[int] = None) -> ExpansionSpec:
    """
    p_l = a_l(1/E_X) and p~_{l,s} = a_l(1/E_Zs) over levels -L1..L2.

    Raises:
        ConstraintError: sum_l 2^l p_l exceeds E_X
    """
    l1 = settings.DEFAULT_L1 if l1 is None else l1
    l2 = settings.DEFAULT_L2 if l2 is None else l2
    if l1 < 0 or l2 < 0:
        raise DomainError(f"L1 and L2 must be non-negative, got {l1}, {l2}")

    levels = np.arange(-l1, l2 + 1, dtype=np.float64)
    input_bias = expansion_bernoulli_param(1.0 / profile.input_mean, levels)
    noise_bias = np.column_stack(
        [expansion_bernoulli_param(1.0 / mean, levels) for mean in profile.noise_means]
    )
    spec = ExpansionSpec(
        l1=l1,
        l2=l2,
        input_mean=profile.input_mean,
        noise_means=tuple(profile.noise_means),
        state_probabilities=tuple(profile.probabilities),
        input_bias=np.atleast_1d(input_bias),
        noise_bias=noise_bias,
    )
    if spec.achieved_mean > profile.input_mean * (1.0 + MEAN_TOLERANCE):
        raise ConstraintError(
            f"level input mean {spec.achieved_mean:.12g} exceeds E_X={profile.input_mean:.12g}"
        )
    logger.debug(
        "expansion spec built",
        extra={"L1": l1, "L2": l2, "input_mean": profile.input_mean, "achieved_mean": spec.achieved_mean},
    )
    return spec


def level_rate_table(spec: ExpansionSpec, profile: Optional[AenProfile] = None) -> pd.DataFrame:
    """
    One row per (level, state): p_l, p~_{l,s}, their binary convolution and the
    level rate H(p_l * p~_{l,s}) - H(p~_{l,s}).

    State weights come from `profile` when given, otherwise from spec.state_probabilities.
    """
    levels = np.repeat(spec.levels, spec.num_states)
    states = np.tile(np.arange(1, spec.num_states + 1), spec.num_levels)
    p = np.repeat(spec.input_bias, spec.num_states)
    noise = spec.noise_bias.reshape(-1)
    mixed = binary_convolution(p, noise)
    q = spec.state_probabilities if profile is None else profile.probabilities
    return pd.DataFrame(
        {
            "level": levels,
            "state": states,
            "q": np.tile(q, spec.num_levels),
            "input_bias": p,
            "noise_bias": noise,
            "output_bias": mixed,
            "rate": np.maximum(binary_entropy(mixed) - binary_entropy(noise), 0.0),
        }
    )


def shaped_rate(spec: ExpansionSpec, profile: Optional[AenProfile] = None) -> float:
    """sum_l sum_s q_s [H(p_l * p~_{l,s}) - H(p~_{l,s})] in bits per channel use"""
    table = level_rate_table(spec, profile)
    return float(np.dot(table["q"].to_numpy(), table["rate"].to_numpy()))


def entropy_tail_bounds(noise_mean: float, level: int) -> TailBounds:
    """
    Bounds on H(p~) at `level` for noise mean E_Z, eta = log2 E_Z:
    H <= 3 log2(e) 2^(eta - l) above eta, H >= 1 - log2(e) 2^(l - eta) at or below.
    """
    if noise_mean <= 0.0:
        raise DomainError(f"noise mean must be positive, got {noise_mean}")
    eta = math.log2(noise_mean)
    if level > eta:
        return TailBounds(level=level, eta=eta, upper=3.0 * LOG2E * 2.0 ** (eta - level), lower=None)
    return TailBounds(level=level, eta=eta, upper=None, lower=1.0 - LOG2E * 2.0 ** (level - eta))


def gap_guarantee_check(profile: AenProfile, epsilon: float) -> GapGuaranteeReport:
    """
    Check R >= sum_s q_s log2(1 + E_X/E_Zs) - 5 log2(e) epsilon at
    L1 = ceil(-log2 eps - min log2 E_Zs), L2 = ceil(-log2 eps + log2 E_X).

    The precondition min_s E_X/E_Zs >= 1/eps is checked first; when it fails the
    report carries holds=None.
    """
    if not 0.0 < epsilon < 1.0:
        raise DomainError(f"epsilon must lie in (0, 1), got {epsilon}")
    bound = capacity_upper_bound_aen(profile)
    snr_min = profile.input_mean / max(profile.noise_means)
    if snr_min < (1.0 / epsilon) * (1.0 - MEAN_TOLERANCE):
        return GapGuaranteeReport(
            precondition_ok=False, holds=None, lhs=None, rhs=None, l1=None, l2=None,
            epsilon=epsilon, bound=bound,
        )

    log_eps = math.log2(epsilon)
    l1 = max(0, math.ceil(-log_eps - min(math.log2(m) for m in profile.noise_means) - MEAN_TOLERANCE))
    l2 = max(0, math.ceil(-log_eps + math.log2(profile.input_mean) - MEAN_TOLERANCE))
    rate = shaped_rate(build_expansion_spec(profile, l1, l2))
    rhs = bound - 5.0 * LOG2E * epsilon
    return GapGuaranteeReport(
        precondition_ok=True, holds=rate >= rhs, lhs=rate, rhs=rhs, l1=l1, l2=l2,
        epsilon=epsilon, bound=bound,
    )


def plan_levels(spec: ExpansionSpec, cut: Optional[float] = None) -> LevelPlan:
    """ACTIVE-UNIFORM where p_l >= cut, FROZEN-ZERO elsewhere"""
    cut = settings.ACTIVE_LEVEL_CUT if cut is None else cut
    modes = tuple(
        LevelMode.ACTIVE_UNIFORM if p >= cut else LevelMode.FROZEN_ZERO for p in spec.input_bias
    )
    return LevelPlan(spec=spec, modes=modes)


def reference_rate(plan: LevelPlan) -> float:
    """sum over active l, states s of q_s (1 - H(p~_{l,s})): uniform-input level capacity"""
    total = 0.0
    q = np.asarray(plan.spec.state_probabilities)
    for level in plan.active_levels:
        noise = plan.spec.noise_bias[plan.spec.index(level)]
        total += float(np.dot(q, 1.0 - binary_entropy(noise)))
    return total


__all__ = [
    "expansion_bernoulli_param",
    "build_expansion_spec",
    "level_rate_table",
    "shaped_rate",
    "entropy_tail_bounds",
    "gap_guarantee_check",
    "plan_levels",
    "reference_rate",
]
