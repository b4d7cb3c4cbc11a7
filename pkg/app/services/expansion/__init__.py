"""Expansion coding for the fading additive exponential noise channel"""

from app.services.channel.capacity import binary_convolution, binary_entropy
from app.services.expansion.arithmetic import carry_add, expand_bits, reassemble, recover_carry
from app.services.expansion.levels import (
    build_expansion_spec,
    entropy_tail_bounds,
    expansion_bernoulli_param,
    level_rate_table,
    plan_levels,
    reference_rate,
    shaped_rate,
    gap_guarantee_check,
)
from app.services.expansion.transmission import (
    ExpansionTransceiver,
    aen_end_to_end,
    level_codes,
    planned_rate,
)

__all__ = [
    "binary_entropy",
    "binary_convolution",
    "expansion_bernoulli_param",
    "expand_bits",
    "reassemble",
    "carry_add",
    "recover_carry",
    "build_expansion_spec",
    "level_rate_table",
    "shaped_rate",
    "entropy_tail_bounds",
    "gap_guarantee_check",
    "plan_levels",
    "reference_rate",
    "level_codes",
    "planned_rate",
    "ExpansionTransceiver",
    "aen_end_to_end",
]
