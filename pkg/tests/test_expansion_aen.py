"""
Expansion coding over the fading AEN channel
"""

import math

import numpy as np
import pytest

from app.core.exceptions import DomainError, InvalidArgumentError
from app.models.channel import AenProfile
from app.models.expansion import LevelMode
from app.services.channel import binary_entropy, capacity_upper_bound_aen
from app.services.channel.capacity import LOG2E
from app.services.expansion import (
    ExpansionTransceiver,
    aen_end_to_end,
    binary_convolution,
    build_expansion_spec,
    carry_add,
    entropy_tail_bounds,
    expand_bits,
    expansion_bernoulli_param,
    level_codes,
    level_rate_table,
    plan_levels,
    planned_rate,
    reassemble,
    recover_carry,
    reference_rate,
    shaped_rate,
    gap_guarantee_check,
)


# ============================================================================
# LEVEL PARAMETERS
# ============================================================================

def test_bernoulli_param_values():
    assert expansion_bernoulli_param(1.0, 0) == pytest.approx(1.0 / (1.0 + math.e))
    assert expansion_bernoulli_param(2.0, -1) == pytest.approx(1.0 / (1.0 + math.e))
    assert expansion_bernoulli_param(1.0, 40) == 0.0
    assert expansion_bernoulli_param(1.0, -60) == pytest.approx(0.5)
    with pytest.raises(DomainError):
        expansion_bernoulli_param(0.0, 1)


def test_bernoulli_param_shifts_with_scale():
    levels = np.arange(-6, 6)
    assert np.allclose(expansion_bernoulli_param(0.5, levels + 1), expansion_bernoulli_param(1.0, levels))


def test_spec_levels_and_shapes(two_state_aen):
    spec = build_expansion_spec(two_state_aen, 3, 5)
    assert spec.levels.tolist() == list(range(-3, 6))
    assert spec.input_bias.shape == (9,)
    assert spec.noise_bias.shape == (9, 2)
    assert spec.index(-3) == 0
    assert spec.index(5) == 8
    with pytest.raises(InvalidArgumentError):
        spec.index(6)


def test_unit_mean_spec():
    profile = AenProfile(noise_means=(1.0,), probabilities=(1.0,), input_mean=1.0)
    spec = build_expansion_spec(profile, 8, 8)
    assert spec.input_bias[spec.index(0)] == pytest.approx(0.2689414213699951)
    assert np.allclose(spec.noise_bias[:, 0], spec.input_bias)


@pytest.mark.parametrize("input_mean", [0.3, 1.0, 57.0, 1000.0])
def test_truncated_levels_respect_mean_constraint(input_mean):
    profile = AenProfile(noise_means=(1.0,), probabilities=(1.0,), input_mean=input_mean)
    spec = build_expansion_spec(profile, 8, 8)
    assert spec.achieved_mean <= input_mean
    # deeper expansions approach the constraint
    assert build_expansion_spec(profile, 24, 24).achieved_mean == pytest.approx(input_mean, rel=1e-6)


def test_noise_bias_strictly_decreases_with_level(two_state_aen):
    spec = build_expansion_spec(two_state_aen, 8, 8)
    assert (np.diff(spec.noise_bias, axis=0) < 0).all()
    assert (np.diff(spec.input_bias) < 0).all()


def test_spec_rejects_negative_depths(two_state_aen):
    with pytest.raises(DomainError):
        build_expansion_spec(two_state_aen, -1, 4)


# ============================================================================
# BINARY EXPANSION
# ============================================================================

def test_expand_exact_value():
    digits = expand_bits(5.75, 2, 3)
    assert digits.bits.tolist() == [1, 1, 1, 0, 1, 0]
    assert digits.residual == 0.0
    assert digits.overflow == 0.0
    assert reassemble(digits.bits, 2) == 5.75


def test_expand_truncates_toward_zero():
    digits = expand_bits(np.array([0.3, 2.99]), 1, 2)
    assert reassemble(digits.bits, 1).tolist() == [0.0, 2.5]
    assert digits.residual == pytest.approx([0.3, 0.49])
    assert not digits.overflowed.any()


def test_expand_reports_overflow():
    digits = expand_bits(20.0, 0, 3)
    assert digits.bits.tolist() == [1, 1, 1, 1]
    assert digits.overflow == 5.0
    assert digits.overflowed


def test_expand_validation():
    with pytest.raises(DomainError):
        expand_bits(-0.5, 2, 2)
    with pytest.raises(DomainError):
        expand_bits(1.0, -1, 2)
    with pytest.raises(InvalidArgumentError):
        expand_bits(1.0, 31, 31)


def test_exponential_levels_are_independent_bernoulli():
    rng = np.random.default_rng(11)
    samples = rng.exponential(1.0, size=200_000)
    digits = expand_bits(samples, 4, 4)
    levels = np.arange(-4, 5)
    expected = expansion_bernoulli_param(1.0, levels)
    observed = digits.bits.mean(axis=0)
    sigma = np.sqrt(expected * (1 - expected) / samples.size)
    assert (np.abs(observed - expected) <= 4 * sigma + 1e-12).all()

    # joint frequency of levels 0 and 1 factorizes
    joint = (digits.bits[:, 4] & digits.bits[:, 5]).mean()
    product = expected[4] * expected[5]
    assert abs(joint - product) <= 4 * math.sqrt(product * (1 - product) / samples.size)


@pytest.mark.slow
@pytest.mark.parametrize("rate", [0.5, 1.0, 2.0])
def test_independent_levels_reassemble_to_exponential(rate):
    rng = np.random.default_rng(12)
    bias = expansion_bernoulli_param(rate, np.arange(-24, 25))
    samples = np.concatenate(
        [reassemble(rng.random((200_000, bias.size)) < bias, 24) for _ in range(5)]
    )

    deciles = np.linspace(0.1, 0.9, 9)
    points = -np.log1p(-deciles) / rate
    empirical = (samples[:, None] <= points).mean(axis=0)
    sigma = np.sqrt(deciles * (1 - deciles) / samples.size)
    assert (np.abs(empirical - deciles) <= 3 * sigma).all()


# ============================================================================
# CARRIES
# ============================================================================

def test_carry_add_example():
    x = expand_bits(3.0, 0, 2).bits
    z = expand_bits(1.0, 0, 2).bits
    result = carry_add(x, z)
    assert result.bits.tolist() == [0, 0, 1]
    assert result.carries.tolist() == [0, 1, 1]
    assert result.carry_out == 0


def test_carry_add_is_exact_over_six_levels():
    values = np.arange(64, dtype=np.float64)
    x, z = (a.ravel() for a in np.meshgrid(values, values))
    result = carry_add(expand_bits(x, 0, 5).bits, expand_bits(z, 0, 5).bits)
    assert np.array_equal(reassemble(result.bits, 0) + 64.0 * result.carry_out, x + z)


def test_carry_add_shape_mismatch():
    with pytest.raises(InvalidArgumentError):
        carry_add(np.zeros(3, dtype=np.uint8), np.zeros(4, dtype=np.uint8))


def test_receiver_recovers_noise_and_carries():
    rng = np.random.default_rng(13)
    xbits = rng.integers(0, 2, size=(50, 8), dtype=np.uint8)
    zbits = rng.integers(0, 2, size=(50, 8), dtype=np.uint8)
    added = carry_add(xbits, zbits)

    carry = np.zeros(50, dtype=np.uint8)
    for j in range(8):
        assert np.array_equal(carry, added.carries[:, j])
        z_hat, carry = recover_carry(added.bits[:, j], xbits[:, j], carry)
        assert np.array_equal(z_hat, zbits[:, j])
    assert np.array_equal(carry, added.carry_out)


# ============================================================================
# RATES
# ============================================================================

def test_level_rate_table(two_state_aen):
    spec = build_expansion_spec(two_state_aen, 4, 6)
    table = level_rate_table(spec)
    assert list(table.columns) == ["level", "state", "q", "input_bias", "noise_bias", "output_bias", "rate"]
    assert len(table) == 11 * 2
    assert (table["rate"] >= 0).all()
    row = table[(table["level"] == 2) & (table["state"] == 2)].iloc[0]
    mixed = binary_convolution(row["input_bias"], row["noise_bias"])
    assert row["rate"] == pytest.approx(binary_entropy(mixed) - binary_entropy(row["noise_bias"]))


def test_level_rate_table_uses_profile_weights(two_state_aen):
    spec = build_expansion_spec(two_state_aen, 2, 2)
    reweighted = AenProfile(
        noise_means=two_state_aen.noise_means,
        probabilities=(0.9, 0.1),
        input_mean=two_state_aen.input_mean,
    )
    table = level_rate_table(spec, reweighted)
    assert table["q"].tolist() == pytest.approx([0.9, 0.1] * spec.num_levels)
    assert table["rate"].tolist() == pytest.approx(level_rate_table(spec)["rate"].tolist())


def test_single_level_shaped_rate():
    profile = AenProfile(noise_means=(1.0, 4.0), probabilities=(0.25, 0.75), input_mean=2.0)
    spec = build_expansion_spec(profile, 0, 0)
    p = expansion_bernoulli_param(0.5, 0)
    expected = 0.0
    for mean, q in zip(profile.noise_means, profile.probabilities):
        noise = expansion_bernoulli_param(1.0 / mean, 0)
        expected += q * (binary_entropy(binary_convolution(p, noise)) - binary_entropy(noise))
    assert shaped_rate(spec) == pytest.approx(expected)
    assert shaped_rate(spec, profile) == pytest.approx(expected)


def test_shaped_rate_increases_with_input_mean(two_state_aen):
    rates = [
        shaped_rate(build_expansion_spec(two_state_aen.with_input_mean(mean), 16, 16))
        for mean in np.geomspace(0.1, 1e4, 16)
    ]
    assert all(a < b for a, b in zip(rates, rates[1:]))


def test_rate_vanishes_without_input():
    profile = AenProfile(noise_means=(1.0,), probabilities=(1.0,), input_mean=1e-9)
    assert shaped_rate(build_expansion_spec(profile, 4, 4)) < 1e-6


def test_two_state_gap_shrinks_with_snr(two_state_aen):
    gaps = []
    for snr_db in range(0, 45, 5):
        profile = two_state_aen.with_average_snr_db(snr_db)
        rate = shaped_rate(build_expansion_spec(profile, 24, 24))
        bound = capacity_upper_bound_aen(profile)
        assert rate < bound
        gaps.append(bound - rate)
    assert all(a > b for a, b in zip(gaps, gaps[1:]))
    assert gaps[0] > 0.4
    assert gaps[-1] < 0.05


def test_finite_level_gap_is_small(two_state_aen):
    rate = shaped_rate(build_expansion_spec(two_state_aen, 20, 20))
    assert capacity_upper_bound_aen(two_state_aen) - rate <= 5 * LOG2E * 0.003


@pytest.mark.parametrize("noise_mean", [0.5, 1.0, 3.0, 10.0])
def test_entropy_tail_bounds(noise_mean):
    for level in range(-10, 11):
        tail = entropy_tail_bounds(noise_mean, level)
        h = binary_entropy(expansion_bernoulli_param(1.0 / noise_mean, level))
        if level > tail.eta:
            assert tail.lower is None
            assert h <= tail.upper
        else:
            assert tail.upper is None
            assert h >= tail.lower


def test_tail_bounds_validation():
    with pytest.raises(DomainError):
        entropy_tail_bounds(0.0, 1)


@pytest.mark.parametrize(
    "input_mean, depths",
    [(100.0, (7, 12)), (1000.0, (10, 19)), (1e4, (13, 25))],
)
def test_finite_level_guarantee(two_state_aen, input_mean, depths):
    profile = two_state_aen.with_input_mean(input_mean)
    report = gap_guarantee_check(profile, max(profile.noise_means) / input_mean)
    assert report.precondition_ok
    assert (report.l1, report.l2) == depths
    assert report.holds
    assert report.gap <= 5 * LOG2E * report.epsilon
    assert report.to_dict()["L1"] == depths[0]


def test_guarantee_with_loose_epsilon():
    profile = AenProfile(noise_means=(1.0,), probabilities=(1.0,), input_mean=10.0)
    report = gap_guarantee_check(profile, 0.9)
    assert report.precondition_ok
    assert report.rhs < 0
    assert report.holds


def test_guarantee_precondition_failure():
    profile = AenProfile(noise_means=(1.0,), probabilities=(1.0,), input_mean=1.0)
    report = gap_guarantee_check(profile, 0.1)
    assert not report.precondition_ok
    assert report.holds is None
    assert report.gap is None
    with pytest.raises(DomainError):
        gap_guarantee_check(profile, 1.5)


# ============================================================================
# LEVEL PLANS
# ============================================================================

def test_plan_activates_nearly_uniform_levels(two_state_aen):
    spec = build_expansion_spec(two_state_aen, 8, 8)
    plan = plan_levels(spec, 0.45)
    assert plan.active_levels == list(range(-8, 8))
    assert plan.mode(8) == LevelMode.FROZEN_ZERO
    assert plan.mode(0) == LevelMode.ACTIVE_UNIFORM


def test_with_active_and_mean(two_state_aen):
    plan = plan_levels(build_expansion_spec(two_state_aen, 8, 8)).with_active([0, 1])
    assert plan.active_levels == [0, 1]
    assert plan.achieved_mean == 1.5
    with pytest.raises(InvalidArgumentError):
        plan.with_active([9])


def test_level_profiles_order_states_by_noise(two_state_aen):
    plan = plan_levels(build_expansion_spec(two_state_aen, 4, 4))
    assert plan.state_rank.tolist() == [2, 1]
    profile = plan.level_profile(1)
    assert profile.probabilities == pytest.approx((0.2, 0.8))
    assert profile.crossovers[0] >= profile.crossovers[1]


def test_level_codes_approach_reference_rate():
    profile = AenProfile(noise_means=(1.0,), probabilities=(1.0,), input_mean=10.0)
    plan = plan_levels(build_expansion_spec(profile, 4, 6)).with_active([3])
    codes = level_codes(plan, 12, 4, 1e-3, 0.05)
    assert list(codes) == [3]
    reference = reference_rate(plan)
    assert reference == pytest.approx(0.9955, abs=1e-3)
    assert 0.85 * reference <= planned_rate(codes) <= reference


# ============================================================================
# END TO END
# ============================================================================

def test_noiseless_transmission(seed):
    profile = AenProfile(noise_means=(1e-9,), probabilities=(1.0,), input_mean=1.5)
    plan = plan_levels(build_expansion_spec(profile, 2, 3)).with_active([0, 1])
    report = aen_end_to_end(profile, plan, 5, 4, seed)

    assert report.success
    assert report.level_success == {0: True, 1: True}
    assert report.level_info_bits == {0: 128, 1: 128}
    assert report.rate == 2.0
    assert report.delivered_rate == 2.0
    assert report.overflow_count == 0
    assert report.unreliable_levels == []


def test_transceiver_is_reproducible(seed, two_state_aen):
    plan = plan_levels(build_expansion_spec(two_state_aen, 2, 4)).with_active([2, 3])
    transceiver = ExpansionTransceiver(two_state_aen, plan, 5, 8, 1e-2, 0.25)
    first = transceiver.run(seed.child(0))
    second = transceiver.run(seed.child(0))
    assert first == second
    assert set(first.level_success) == {2, 3}
    assert transceiver.rate == pytest.approx(first.rate)


@pytest.mark.slow
def test_single_active_level(seed):
    profile = AenProfile(noise_means=(1.0,), probabilities=(1.0,), input_mean=10.0)
    plan = plan_levels(build_expansion_spec(profile, 4, 6)).with_active([3])
    transceiver = ExpansionTransceiver(profile, plan, 10, 128, 1e-6, 0.05)
    reports = [transceiver.run(seed.child(t)) for t in range(100)]
    assert sum(r.success for r in reports) >= 95
    assert all(r.overflow_count == 0 for r in reports)
