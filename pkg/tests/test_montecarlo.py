from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from zebraperc import RootMode, TreeParams
from zebraperc.analytic import open_ray_probability, zebra_critical_pair, zebra_dp
from zebraperc.montecarlo import (
    EventKind,
    EventSpec,
    NoBracketError,
    Side,
    brute_force_probability,
    count_zebra_connected,
    estimate_count,
    estimate_probability,
    find_critical_dp,
    find_critical_mc,
    mc_indicator_threshold,
    open_ray,
    sample_open_ray,
    sample_sigma,
    sample_zebra_ray,
    transform_equivalence_trial,
    wilson_interval,
    zebra_count,
    zebra_ray,
)
from zebraperc.params import SolverConfig
from zebraperc.rng import TrialStream
from zebraperc.tree import open_ray_witness, zebra_connected_count, zebra_ray_witness

P2 = TreeParams(2)
P3 = TreeParams(3)


class TestSamplers:
    def test_open_ray_degenerate(self):
        for n in (1, 3, 8):
            assert sample_open_ray(P2, 1.0, n, TrialStream(0, 0)) is True
            assert sample_open_ray(P2, 0.0, n, TrialStream(0, 0)) is False

    def test_zebra_ray_degenerate(self):
        for trial in range(50):
            assert sample_zebra_ray(P3, 0.37, 1, TrialStream(1, trial)) is True
            assert sample_zebra_ray(P3, 1.0, 2, TrialStream(1, trial)) is False
            assert sample_zebra_ray(P3, 0.0, 2, TrialStream(1, trial)) is False

    def test_count_degenerate(self):
        for trial in range(50):
            assert count_zebra_connected(P2, 1.0, 2, TrialStream(2, trial)) == 0
            assert count_zebra_connected(P2, 0.5, 1, TrialStream(2, trial)) == 2

    @given(st.integers(0, 10**5))
    @settings(max_examples=150)
    def test_lazy_agrees_with_materialized_config(self, trial):
        p = 0.35
        for params in (P3, TreeParams(2, RootMode.FULL_CAYLEY)):
            sigma = sample_sigma(params, 4, p, TrialStream(5, trial))
            assert sample_zebra_ray(params, p, 4, TrialStream(5, trial)) == (
                zebra_ray_witness(params, sigma, 4) is not None
            )
            assert sample_open_ray(params, p, 4, TrialStream(5, trial)) == (
                open_ray_witness(params, sigma, 4) is not None
            )
            assert count_zebra_connected(params, p, 4, TrialStream(5, trial)) == (
                zebra_connected_count(params, sigma, 4)
            )


class TestWilson:
    def test_degenerate_single_trial(self):
        low, high = wilson_interval(0, 1)
        assert low == 0.0 and 0.0 < high < 1.0
        low, high = wilson_interval(1, 1)
        assert 0.0 < low < 1.0 and high == 1.0

    @given(st.integers(1, 10**6), st.data())
    def test_contains_the_point_estimate(self, trials, data):
        successes = data.draw(st.integers(0, trials))
        low, high = wilson_interval(successes, trials)
        assert 0.0 <= low <= successes / trials <= high <= 1.0


class TestEstimators:
    def test_single_trial(self):
        est = estimate_probability(P2, 0.5, zebra_ray(2), 1, 0)
        assert est.mean in (0.0, 1.0)
        assert 0.0 <= est.ci95_low <= est.mean <= est.ci95_high <= 1.0

    def test_deterministic_and_worker_independent(self):
        kwargs = dict(params=P3, p=0.4, event=zebra_ray(6), trials=2000, seed=31)
        a = estimate_probability(**kwargs, workers=1)
        b = estimate_probability(**kwargs, workers=1)
        c = estimate_probability(**kwargs, workers=2)
        assert a == b == c

    def test_open_ray_level_one(self):
        est = estimate_probability(P2, 0.5, open_ray(1), 20000, 17)
        assert abs(est.mean - 0.75) <= 3 * est.stderr

    def test_zebra_ray_matches_recursion(self):
        exact = zebra_dp(P3, 0.5, 6)[6].z
        est = estimate_probability(P3, 0.5, zebra_ray(6), 20000, 23)
        assert abs(est.mean - exact) <= 3 * max(est.stderr, 1e-9)

    def test_open_ray_matches_recursion(self):
        exact = open_ray_probability(P3, 0.6, 6)
        est = estimate_probability(P3, 0.6, open_ray(6), 20000, 29)
        assert abs(est.mean - exact) <= 3 * est.stderr

    def test_count_mean_matches_first_moment(self):
        from zebraperc.analytic import expected_zebra_count

        expected = expected_zebra_count(P2, 0.3, 3)
        est = estimate_count(P2, 0.3, zebra_count(3), 10000, 37, workers=2)
        assert abs(est.mean - expected) <= 3 * est.stderr
        assert est == estimate_count(P2, 0.3, zebra_count(3), 10000, 37)

    def test_kind_routing(self):
        with pytest.raises(ValueError):
            estimate_probability(P2, 0.5, zebra_count(2), 10, 0)
        with pytest.raises(ValueError):
            estimate_count(P2, 0.5, zebra_ray(2), 10, 0)

    def test_three_sigma_coverage_over_seeds(self):
        # statistical, not absolute: ~99.7% of seeds should cover the exact value
        exact = 15 / 16
        covered = 0
        for seed in range(30):
            est = estimate_probability(P2, 0.5, zebra_ray(2), 1000, seed)
            if abs(est.mean - exact) <= 3 * max(est.stderr, 1e-9):
                covered += 1
        assert covered >= 28


class TestBruteForce:
    def test_exact_reference_value(self):
        assert brute_force_probability(P2, 0.5, zebra_ray(2), exact=True) == Fraction(15, 16)

    def test_open_ray_level_one(self):
        assert brute_force_probability(P2, 0.5, open_ray(1)) == pytest.approx(0.75, abs=1e-15)

    def test_zero_probability_cases(self):
        assert brute_force_probability(P2, 0.0, zebra_ray(2)) == 0.0
        assert brute_force_probability(P2, 1.0, zebra_ray(2)) == 0.0

    @pytest.mark.parametrize("depth", [1, 2])
    @pytest.mark.parametrize("p", [0.2, 0.5, 0.8])
    def test_matches_recursions(self, depth, p):
        zebra_exact = brute_force_probability(P2, p, zebra_ray(depth))
        assert zebra_exact == pytest.approx(zebra_dp(P2, p, depth)[depth].z, abs=1e-12)
        open_exact = brute_force_probability(P2, p, open_ray(depth))
        assert open_exact == pytest.approx(open_ray_probability(P2, p, depth), abs=1e-12)

    def test_count_expectation(self):
        from zebraperc.analytic import expected_zebra_count

        value = brute_force_probability(P2, 0.3, zebra_count(2))
        assert value == pytest.approx(expected_zebra_count(P2, 0.3, 2), abs=1e-12)

    def test_full_cayley_mode(self):
        params = TreeParams(2, RootMode.FULL_CAYLEY)
        value = brute_force_probability(params, 0.5, zebra_ray(2))
        assert value == pytest.approx(zebra_dp(params, 0.5, 2)[2].z, abs=1e-12)


class TestTransformEquivalence:
    @pytest.mark.parametrize("params,m", [(P2, 2), (P2, 3), (P3, 2)])
    def test_sampled_trials_hold(self, params, m):
        assert all(
            transform_equivalence_trial(params, 0.5, m, TrialStream(0, t))
            for t in range(300)
        )

    def test_biased_probabilities_hold(self):
        for p in (0.1, 0.9):
            assert all(
                transform_equivalence_trial(P2, p, 2, TrialStream(1, t))
                for t in range(200)
            )


class TestCriticalFinders:
    def test_dp_matches_formula(self):
        for k in (3, 4):
            params = TreeParams(k)
            pair = zebra_critical_pair(params)
            cfg = SolverConfig(tol=1e-3, max_iter=10**4)
            assert find_critical_dp(params, Side.LOWER, cfg) == pytest.approx(
                pair.p_low, abs=0.01
            )
            assert find_critical_dp(params, Side.UPPER, cfg) == pytest.approx(
                pair.p_high, abs=0.01
            )

    def test_dp_no_bracket_for_k2(self):
        for side in Side:
            with pytest.raises(NoBracketError):
                find_critical_dp(P2, side)

    def test_mc_threshold_rule(self):
        assert mc_indicator_threshold(P2, 16) == pytest.approx(0.5, abs=1e-12)
        assert mc_indicator_threshold(P3, 16) == pytest.approx(6 / (16 * 8 / 9), abs=1e-12)

    def test_mc_smoke(self):
        pair = zebra_critical_pair(P3)
        located = find_critical_mc(P3, Side.LOWER, 12, 2000, 77)
        assert located == pytest.approx(pair.p_low, abs=0.08)

    def test_mc_no_bracket_for_k2(self):
        with pytest.raises(NoBracketError):
            find_critical_mc(P2, Side.LOWER, 12, 2000, 77)
        with pytest.raises(NoBracketError):
            find_critical_mc(P2, Side.UPPER, 12, 2000, 77)


class TestEventSpec:
    def test_depth_validation(self):
        with pytest.raises(ValueError):
            EventSpec(EventKind.ZEBRA_RAY, 0)
