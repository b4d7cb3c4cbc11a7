"""Binary polar code primitives: transform, construction, SC decoding"""

from app.services.polar.construction import (
    build_code,
    construct_reliabilities,
    initial_bhattacharyya,
    select_info_set,
    union_bound,
)
from app.services.polar.decoder import bec_llr, bsc_llr, decode_batch, decode_llr, sc_decode
from app.services.polar.transform import bit_reversal_permutation, butterfly, polar_transform

__all__ = [
    "bit_reversal_permutation",
    "butterfly",
    "polar_transform",
    "initial_bhattacharyya",
    "construct_reliabilities",
    "select_info_set",
    "build_code",
    "union_bound",
    "bsc_llr",
    "bec_llr",
    "decode_llr",
    "decode_batch",
    "sc_decode",
]
