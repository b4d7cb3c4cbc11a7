"""
End-to-end Monte-Carlo trials of the hierarchical scheme over the fading BSC
"""

import logging
from typing import Optional

from app.models.channel import Seed
from app.models.fading import HierarchicalCode, TrialOutcome
from app.services.channel.bsc import transit_fading_bsc
from app.services.fading.decoder import HierarchicalDecoder
from app.services.fading.encoder import encode, random_message

logger = logging.getLogger(__name__)


def simulate_trial(
    code: HierarchicalCode,
    seed: Seed,
    trial: int = 0,
    decoder: Optional[HierarchicalDecoder] = None,
) -> TrialOutcome:
    """
    One trial: random message, encode, transit, decode, compare.

    The trial draws everything from seed.child(trial), so outcomes do not
    depend on the order in which trials are run.
    """
    trial_seed = seed.child(trial)
    decoder = decoder or HierarchicalDecoder.for_code(code)

    message = random_message(code, trial_seed)
    received = transit_fading_bsc(encode(message, code), code.profile, trial_seed)
    result = decoder.decode(received)

    errors = message.bit_errors(result.message)
    return TrialOutcome(
        trial=trial,
        success=errors == 0,
        bit_errors=errors,
        info_bits=message.total_bits,
        flagged=not result.ok,
        first_failed_phase=result.first_failed_phase,
    )


__all__ = ["simulate_trial"]
