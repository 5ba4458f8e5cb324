"""Sampling X: determinism, density agreement, overflow and step policies."""

import numpy as np
import pytest

from cpdist.alaw import ALaw
from cpdist.density import cp_density
from cpdist.errors import (
    ParameterError,
    SamplerOverflowError,
    SamplerStepLimitError,
)
from cpdist.sampler import SampleConfig, sample, sample_stopped

LAWS = [
    ALaw.poisson(0.5),
    ALaw.binomial(2, 0.2),
    ALaw.negbinomial(2, 0.9),
    ALaw.geometric(0.8),
]

INT64_MAX = np.iinfo(np.int64).max


class TestConfig:
    def test_defaults(self):
        config = SampleConfig()
        assert config.seed == 0
        assert config.max_steps == 1_000_000
        assert config.overflow_policy == "error"

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"seed": -1},
            {"seed": 2**64},
            {"max_steps": 0},
            {"overflow_policy": "wrap"},
        ],
    )
    def test_validation(self, kwargs):
        with pytest.raises(ParameterError):
            SampleConfig(**kwargs)


class TestDeterminism:
    @pytest.mark.parametrize("draw", [sample, sample_stopped], ids=["chain", "stopped"])
    def test_same_seed_same_draws(self, draw):
        law = ALaw.geometric(0.8)
        a = draw(law, SampleConfig(seed=123), 500)
        b = draw(law, SampleConfig(seed=123), 500)
        np.testing.assert_array_equal(a, b)
        c = draw(law, SampleConfig(seed=124), 500)
        assert not np.array_equal(a, c)

    def test_dtype_and_support(self):
        for law in LAWS:
            values = sample(law, SampleConfig(seed=5), 2000)
            assert values.dtype == np.int64
            assert values.min() >= 1


class TestDensityAgreement:
    """Empirical frequencies match cp_density within 4 Monte-Carlo standard errors."""

    @pytest.mark.parametrize("law", LAWS, ids=str)
    @pytest.mark.parametrize("draw", [sample, sample_stopped], ids=["chain", "stopped"])
    def test_within_four_se(self, law, draw):
        n_draws = 200_000
        values = draw(law, SampleConfig(seed=31), n_draws)
        density = cp_density(law, 20)
        counts = np.bincount(np.clip(values, 0, 21), minlength=22)
        for n in range(1, 21):
            p = density.prob(n)
            se = np.sqrt(max(p * (1.0 - p), 1e-300) / n_draws)
            observed = counts[n] / n_draws
            assert abs(observed - p) <= 4.0 * se + 1e-12, (law, n)


class TestPolicies:
    # r=5, p=0.05 multiplies by ~95 per step and almost never stops,
    # so 64-bit products overflow deterministically within a few steps
    explosive = ALaw.negbinomial(5, 0.05)

    def test_overflow_error_policy(self):
        with pytest.raises(SamplerOverflowError):
            sample(self.explosive, SampleConfig(seed=3), 64)

    def test_overflow_saturate_policy(self):
        values = sample(self.explosive, SampleConfig(seed=3, overflow_policy="saturate"), 64)
        assert (values == INT64_MAX).any()
        assert values.min() >= 1

    def test_stopped_sampler_step_limit(self):
        # chain length is drawn up front; p0 ~ 3e-7 makes it exceed any budget
        with pytest.raises(SamplerStepLimitError):
            sample_stopped(self.explosive, SampleConfig(seed=3), 64)

    def test_stopped_sampler_policies(self):
        # short chains (p0 = 0.1) of large multipliers (~10x per step) push
        # running products past the exact-float range without long chains
        law = ALaw.geometric(0.1)
        with pytest.raises(SamplerOverflowError):
            sample_stopped(law, SampleConfig(seed=3), 64)
        values = sample_stopped(law, SampleConfig(seed=3, overflow_policy="saturate"), 64)
        assert (values == INT64_MAX).any()
        assert values.min() >= 1

    def test_step_limit(self):
        # e^-2 stop mass per round: 100 walkers virtually never finish in one step
        with pytest.raises(SamplerStepLimitError):
            sample(ALaw.poisson(2.0), SampleConfig(seed=1, max_steps=1, overflow_policy="saturate"), 100)

    def test_generous_step_limit_passes(self):
        values = sample(ALaw.geometric(0.8), SampleConfig(seed=1, max_steps=10_000), 1000)
        assert values.size == 1000
