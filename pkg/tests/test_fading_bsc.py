"""
Hierarchical polar coding over the block-fading BSC
"""

import numpy as np
import pytest

from app.core.exceptions import DomainError, InvalidArgumentError, InvalidLengthError, PreconditionError
from app.models.channel import Seed
from app.models.fading import CodewordMatrix, FadingProfile, HierarchicalCode, HierMessage
from app.models.polar import ERASED, ConstructionRule, DesignChannel
from app.services.channel import bsc_capacity, transit_fading_bsc
from app.services.fading import (
    HierarchicalDecoder,
    bec_code_dimension,
    build_bec_codes,
    build_hierarchical_code,
    encode_columns,
    erasure_probabilities,
    ergodic_capacity_bsc,
    hier_decode,
    hier_encode,
    partition_indices,
    random_message,
    simulate_trial,
    theoretical_rate,
)
from app.services.polar import build_code, polar_transform
from tests.conftest import gf2_encode, kron_generator

PROFILES = {
    1: FadingProfile(crossovers=(0.05,), probabilities=(1.0,)),
    2: FadingProfile(crossovers=(0.11, 0.03), probabilities=(0.5, 0.5)),
    3: FadingProfile(crossovers=(0.11, 0.05, 0.01), probabilities=(0.3, 0.3, 0.4)),
}

# a state-S row is always present so every column keeps one unerased symbol
NOISELESS_STATES = {
    1: [1, 1, 1, 1],
    2: [2, 1, 1, 2],
    3: [1, 3, 2, 3],
}


def repetition_code_for(profile, n=6, delta=0.1, blocks=4):
    """K = 1 column codes, decodable whenever one block is unerased"""
    partition = partition_indices(n, profile, delta)
    bec_specs = tuple(
        build_code(blocks.bit_length() - 1, DesignChannel.bec(e), ConstructionRule.top_k(1))
        for e in erasure_probabilities(profile)
    )
    return HierarchicalCode(partition=partition, bec_specs=bec_specs, profile=profile, blocks=blocks)


# ============================================================================
# PARTITION
# ============================================================================

def test_single_state_partition_has_no_middle_sets():
    partition = partition_indices(8, PROFILES[1], 1e-3)
    assert partition.middle == ()
    assert partition.good.size + partition.bad.size == 256


def test_equal_crossovers_give_empty_middle_sets():
    profile = FadingProfile(crossovers=(0.05, 0.05), probabilities=(0.5, 0.5))
    partition = partition_indices(8, profile, 1e-3)
    assert partition.middle_sizes == [0]


@pytest.mark.parametrize("states", [1, 2, 3])
def test_partition_is_complete_and_nested(states):
    partition = partition_indices(10, PROFILES[states], 1e-3)
    pieces = [partition.good, *partition.middle, partition.bad]
    joined = np.concatenate(pieces)
    assert np.array_equal(np.sort(joined), np.arange(1024))
    for smaller, larger in zip(partition.info_sets, partition.info_sets[1:]):
        assert np.isin(smaller, larger).all()
    assert np.array_equal(partition.info_set(states), np.sort(np.concatenate(pieces[:-1])))


def test_partition_fractions_two_state():
    partition = partition_indices(10, PROFILES[2], 1e-3)
    assert partition.good.size / 1024 == pytest.approx(0.2246, abs=0.02)
    assert partition.info_set(2).size / 1024 == pytest.approx(0.4941, abs=0.02)
    # finite-N sets stay below the asymptotic capacity fractions
    assert partition.good.size / 1024 < bsc_capacity(0.11)
    assert partition.info_set(2).size / 1024 < bsc_capacity(0.03)


def test_partition_delta_validation():
    with pytest.raises(DomainError):
        partition_indices(6, PROFILES[2], 0.0)
    with pytest.raises(DomainError):
        partition_indices(6, PROFILES[2], 1.0)


# ============================================================================
# BEC CODES
# ============================================================================

def test_erasure_probabilities():
    assert erasure_probabilities(PROFILES[1]) == []
    assert erasure_probabilities(PROFILES[2]) == pytest.approx([0.5])
    assert erasure_probabilities(PROFILES[3]) == pytest.approx([0.3, 0.6])


def test_bec_code_dimension():
    assert bec_code_dimension(0.5, 1024, 0.05) == 460
    assert bec_code_dimension(0.5, 256, 0.25) == 64
    assert bec_code_dimension(0.99, 16, 0.05) == 0
    with pytest.raises(DomainError):
        bec_code_dimension(1.5, 16, 0.0)
    with pytest.raises(DomainError):
        bec_code_dimension(0.5, 16, -0.1)


def test_build_bec_codes():
    codes = build_bec_codes(256, PROFILES[3], 0.05)
    assert [c.length for c in codes] == [256, 256]
    assert [c.dimension for c in codes] == [166, 89]
    with pytest.raises(InvalidLengthError):
        build_bec_codes(100, PROFILES[3], 0.05)


# ============================================================================
# ENCODER
# ============================================================================

def test_all_zero_message_gives_all_zero_codeword():
    code = build_hierarchical_code(6, 8, PROFILES[3], 0.1, 0.05)
    message = HierMessage(
        row_messages=np.zeros((8, code.partition.good.size)),
        column_messages=[np.zeros((m.size, s.dimension)) for m, s in zip(code.partition.middle, code.bec_specs)],
    )
    assert not hier_encode(message, code.partition, code.bec_specs).bits.any()


def test_single_state_encoding_is_rowwise_polar():
    partition = partition_indices(5, PROFILES[1], 0.1)
    rows = np.random.default_rng(3).integers(0, 2, size=(6, partition.good.size))
    x = hier_encode(HierMessage(row_messages=rows, column_messages=[]), partition, [])
    u = np.zeros((6, 32), dtype=np.uint8)
    u[:, partition.good] = rows
    assert np.array_equal(x.bits, gf2_encode(u, kron_generator(5)))
    assert x.block_states is None


def test_column_codewords_match_generator_matrix():
    spec = build_code(2, DesignChannel.bec(0.5), ConstructionRule.top_k(2))
    values = np.array([[1, 0], [0, 1], [1, 1]])
    v = np.zeros((3, 4), dtype=np.int64)
    v[:, spec.info_set] = values
    assert np.array_equal(encode_columns(values, spec), gf2_encode(v, kron_generator(2)))


def test_toy_two_state_encoding():
    code = repetition_code_for(PROFILES[2], n=2, delta=0.45)
    partition = code.partition
    rows = np.random.default_rng(5).integers(0, 2, size=(4, partition.good.size))
    columns = [np.ones((partition.middle_set(1).size, 1), dtype=np.uint8)]
    x = hier_encode(HierMessage(row_messages=rows, column_messages=columns), partition, code.bec_specs)

    # a K = 1 code on index B-1 repeats the bit on every block
    u = np.zeros((4, 4), dtype=np.int64)
    u[:, partition.good] = rows
    u[:, partition.middle_set(1)] = 1
    assert np.array_equal(x.bits, gf2_encode(u, kron_generator(2)))


def test_encoder_rejects_mismatched_messages():
    code = build_hierarchical_code(6, 8, PROFILES[2], 0.1, 0.05)
    good = code.partition.good.size
    middle = code.partition.middle_set(1).size
    k = code.bec_specs[0].dimension
    with pytest.raises(InvalidArgumentError):
        hier_encode(HierMessage(np.zeros((8, good + 1)), [np.zeros((middle, k))]), code.partition, code.bec_specs)
    with pytest.raises(InvalidArgumentError):
        hier_encode(HierMessage(np.zeros((8, good)), [np.zeros((middle, k + 1))]), code.partition, code.bec_specs)
    with pytest.raises(InvalidArgumentError):
        hier_encode(HierMessage(np.zeros((8, good)), []), code.partition, code.bec_specs)


def test_random_message_is_seeded(seed):
    code = build_hierarchical_code(6, 8, PROFILES[2], 0.1, 0.05)
    assert random_message(code, seed).equals(random_message(code, seed))
    assert not random_message(code, seed).equals(random_message(code, Seed(seed.value + 1)))


# ============================================================================
# DECODER
# ============================================================================

@pytest.mark.parametrize("states", [1, 2, 3])
def test_noiseless_round_trip(states, seed):
    code = repetition_code_for(PROFILES[states])
    message = random_message(code, seed)
    x = hier_encode(message, code.partition, code.bec_specs)
    received = CodewordMatrix(bits=x.bits, block_states=NOISELESS_STATES[states])

    result = hier_decode(received, code.partition, code.profile, code.bec_specs)

    assert result.ok
    assert result.phases == 2 * states - 1
    assert result.message.equals(message)
    assert result.message.bit_errors(message) == 0


@pytest.mark.parametrize("states", [1, 2, 3])
@pytest.mark.parametrize("n, blocks", [(5, 8), (5, 64), (6, 16), (6, 64)])
def test_noiseless_round_trip_with_random_states(states, n, blocks):
    rng = np.random.default_rng(100 * n + blocks + states)
    code = repetition_code_for(PROFILES[states], n=n, blocks=blocks)
    block_states = rng.integers(1, states + 1, size=blocks)
    block_states[rng.integers(blocks)] = states

    for _ in range(3):
        message = random_message(code, Seed(int(rng.integers(1 << 31))))
        x = hier_encode(message, code.partition, code.bec_specs)
        result = hier_decode(
            CodewordMatrix(bits=x.bits, block_states=block_states), code.partition, code.profile, code.bec_specs
        )
        assert result.ok
        assert result.phases == 2 * states - 1
        assert result.message.equals(message)


def test_erasure_fractions_reported(seed):
    code = repetition_code_for(PROFILES[3])
    x = hier_encode(random_message(code, seed), code.partition, code.bec_specs)
    result = HierarchicalDecoder.for_code(code).decode(CodewordMatrix(bits=x.bits, block_states=[1, 3, 2, 3]))
    assert result.erasure_fractions == pytest.approx([0.25, 0.5])


def test_decoder_needs_block_states(seed):
    code = repetition_code_for(PROFILES[2])
    x = hier_encode(random_message(code, seed), code.partition, code.bec_specs)
    with pytest.raises(PreconditionError):
        hier_decode(x, code.partition, code.profile, code.bec_specs)


def test_decoder_rejects_bad_shapes(seed):
    code = repetition_code_for(PROFILES[2])
    decoder = HierarchicalDecoder.for_code(code)
    with pytest.raises(InvalidArgumentError):
        decoder.decode(CodewordMatrix(bits=np.zeros((4, 32)), block_states=[1, 1, 2, 2]))
    with pytest.raises(InvalidArgumentError):
        decoder.decode(CodewordMatrix(bits=np.zeros((8, 64)), block_states=[2] * 8))
    with pytest.raises(InvalidArgumentError):
        decoder.decode(CodewordMatrix(bits=np.zeros((4, 64)), block_states=[1, 3, 2, 2]))
    with pytest.raises(InvalidArgumentError):
        HierarchicalDecoder(code.partition, PROFILES[3], code.bec_specs)


def test_fully_erased_columns_are_localized():
    code = repetition_code_for(PROFILES[2])
    decoder = HierarchicalDecoder.for_code(code)
    positions = code.partition.middle_set(1)
    assert positions.size > 0

    columns = np.full((positions.size, 4), ERASED, dtype=np.int8)
    _, _, failures = decoder.decode_columns(1, columns, phase=2)

    assert [f.index for f in failures] == positions.tolist()
    assert {(f.phase, f.level, f.unit) for f in failures} == {(2, 1, "column")}


def test_all_degraded_blocks_fail_in_the_column_phase(seed):
    code = repetition_code_for(PROFILES[2])
    x = hier_encode(random_message(code, seed), code.partition, code.bec_specs)
    result = HierarchicalDecoder.for_code(code).decode(CodewordMatrix(bits=x.bits, block_states=[1, 1, 1, 1]))
    assert not result.ok
    assert result.first_failed_phase == 2
    assert len(result.failures) == code.partition.middle_set(1).size


def test_erasure_columns_follow_block_states():
    code = repetition_code_for(PROFILES[3])
    decoder = HierarchicalDecoder.for_code(code)
    u_hat = np.ones((4, 64), dtype=np.uint8)
    states = np.array([1, 3, 2, 3])
    for level in (1, 2):
        for column in decoder.erasure_columns(level, u_hat, states):
            assert column.level == level
            assert np.array_equal(column.erased, states <= level)


def test_column_decode_rejects_wrong_shape():
    code = repetition_code_for(PROFILES[2])
    with pytest.raises(InvalidArgumentError):
        HierarchicalDecoder.for_code(code).decode_columns(1, np.zeros((1, 3), dtype=np.int8))


@pytest.mark.slow
@pytest.mark.parametrize("states", [2, 3])
def test_monte_carlo_block_error_rate(states, seed):
    code = build_hierarchical_code(10, 256, PROFILES[states], 1e-6, 0.25)
    decoder = HierarchicalDecoder.for_code(code)
    outcomes = [simulate_trial(code, seed, trial, decoder) for trial in range(200)]
    assert sum(o.success for o in outcomes) >= 190
    assert simulate_trial(code, seed, 7, decoder) == outcomes[7]


def test_trials_are_order_independent(seed):
    code = build_hierarchical_code(6, 16, PROFILES[2], 1e-2, 0.25)
    forward = [simulate_trial(code, seed, t) for t in range(4)]
    backward = [simulate_trial(code, seed, t) for t in reversed(range(4))][::-1]
    assert forward == backward
    assert all(o.info_bits == forward[0].info_bits for o in forward)


def test_empirical_erasure_fraction(seed):
    code = build_hierarchical_code(4, 1024, PROFILES[2], 0.1, 0.05)
    x = hier_encode(random_message(code, seed), code.partition, code.bec_specs)
    received = transit_fading_bsc(x, code.profile, seed)
    result = HierarchicalDecoder.for_code(code).decode(received)
    assert abs(result.erasure_fractions[0] - 0.5) <= 3 * np.sqrt(0.25 / 1024)


# ============================================================================
# RATES
# ============================================================================

def test_single_state_rate_is_good_fraction():
    partition = partition_indices(8, PROFILES[1], 1e-3)
    assert theoretical_rate(partition, []) == partition.good.size / 256


def test_two_state_rate_formula():
    code = build_hierarchical_code(10, 1024, PROFILES[2], 1e-3, 0.05)
    partition = code.partition
    expected = (partition.good.size * 1024 + partition.middle_set(1).size * 460) / (1024 * 1024)
    assert code.bec_specs[0].dimension == 460
    assert theoretical_rate(partition, code.bec_specs) == pytest.approx(expected)


def test_ergodic_capacity_examples():
    assert ergodic_capacity_bsc(PROFILES[2]) == pytest.approx(0.6529, abs=1e-3)
    noiseless = FadingProfile(crossovers=(0.5, 0.0), probabilities=(0.5, 0.5))
    assert ergodic_capacity_bsc(noiseless) == pytest.approx(0.5)


def test_rate_gap_shrinks_with_length():
    capacity = ergodic_capacity_bsc(PROFILES[2])
    gaps = []
    for n in (8, 10, 12, 14):
        code = build_hierarchical_code(n, 1024, PROFILES[2], 1e-3, 0.05)
        rate = theoretical_rate(code.partition, code.bec_specs)
        assert rate < capacity
        gaps.append(capacity - rate)
    assert all(a > b for a, b in zip(gaps, gaps[1:]))
    assert gaps[-1] < 0.25


def test_column_code_transform_is_involution():
    spec = build_code(3, DesignChannel.bec(0.3), ConstructionRule.top_k(4))
    values = np.random.default_rng(9).integers(0, 2, size=(5, 4))
    codewords = encode_columns(values, spec)
    assert np.array_equal(polar_transform(codewords)[:, spec.info_set], values)
