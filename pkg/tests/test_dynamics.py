import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from commitcoord import dynamics
from commitcoord.dynamics import (
    DegenerateChainError,
    EvolutionSetup,
    absorbing_chain_fixation,
    expected_welfare,
    fixation_matrix,
    fixation_probability,
    group_expected_payoffs,
    hypergeom_pmf,
    imitation_probability,
    monte_carlo_fixation,
    pair_average_payoffs,
    stationary_distribution,
    transition_matrix,
)


def table_setup(entries, pop_size, beta, strategies=("A", "B")):
    return EvolutionSetup.pairwise(
        strategies, lambda s, t: entries[s, t], pop_size, beta)


def base_game_setup(pop_size, beta, a=2.0, b=5.0, c=1.0, d=0.0):
    entries = {("A", "A"): a, ("A", "B"): b, ("B", "A"): c, ("B", "B"): d}
    return table_setup(entries, pop_size, beta)


def constant_gap_setup(pop_size, beta, gap=1.0):
    entries = {("A", "A"): gap, ("A", "B"): gap, ("B", "A"): 0.0, ("B", "B"): 0.0}
    return table_setup(entries, pop_size, beta)


class TestSetupValidation:
    def test_requires_exactly_one_evaluator(self):
        with pytest.raises(ValueError):
            EvolutionSetup(10, 0.1, ("A", "B"))
        with pytest.raises(ValueError):
            EvolutionSetup(10, 0.1, ("A", "B"), pair_payoff=lambda s, t: 0.0,
                           group_payoff=lambda s, t, k: 0.0, group_size=3)

    def test_group_size_cannot_exceed_population(self):
        with pytest.raises(ValueError):
            EvolutionSetup.group(("A", "B"), lambda s, t, k: 0.0, 11, 10, 0.1)

    def test_negative_selection_rejected(self):
        with pytest.raises(ValueError):
            base_game_setup(10, -0.1)


class TestPairAveragePayoffs:
    def test_mixed_population_values(self):
        setup = base_game_setup(100, 0.1)
        pi_a, pi_b = pair_average_payoffs(setup, "A", "B", 50)
        assert pi_a == pytest.approx(348 / 99, abs=1e-12)
        assert pi_b == pytest.approx(50 / 99, abs=1e-12)

    def test_homogeneous_population(self):
        setup = base_game_setup(100, 0.1)
        pi_a, pi_b = pair_average_payoffs(setup, "A", "B", 100)
        assert pi_a == pytest.approx(2.0)
        assert math.isnan(pi_b)

    def test_single_pair(self):
        setup = base_game_setup(2, 0.1)
        pi_a, pi_b = pair_average_payoffs(setup, "A", "B", 1)
        assert pi_a == 5.0
        assert pi_b == 1.0

    def test_out_of_range_rejected(self):
        setup = base_game_setup(10, 0.1)
        with pytest.raises(ValueError):
            pair_average_payoffs(setup, "A", "B", 11)


class TestHypergeomWeights:
    @given(st.integers(0, 12), st.integers(0, 30), st.integers(0, 30))
    def test_matches_binomial_oracle(self, draws, successes, extra):
        total = successes + extra
        if draws > total:
            draws = total
        pmf = hypergeom_pmf(draws, successes, total)
        denom = math.comb(total, draws)
        for k in range(draws + 1):
            exact = math.comb(successes, k) * math.comb(total - successes, draws - k) / denom
            assert pmf[k] == pytest.approx(exact, rel=1e-12, abs=1e-300)
        assert pmf.sum() == pytest.approx(1.0, abs=1e-12)


class TestGroupExpectedPayoffs:
    def test_identity_payoff_enumeration(self):
        # Enumerate every co-player draw directly: Z=6, x=3, N=3, payoff = own
        # type count in the group.  Both components must match the enumeration.
        pop_size, group_size, x = 6, 3, 3
        pool = ["i"] * x + ["j"] * (pop_size - x)
        focal_i, focal_j = [], []
        for combo in itertools.combinations(range(pop_size - 1), group_size - 1):
            others_i = [pool[1:][idx] for idx in combo]
            focal_i.append(1 + others_i.count("i"))
            others_j = [pool[:-1][idx] for idx in combo]
            focal_j.append(1 + others_j.count("j"))
        expected_i = sum(focal_i) / len(focal_i)
        expected_j = sum(focal_j) / len(focal_j)

        def payoff(focal, other, k):
            return float(k)

        setup = EvolutionSetup.group(("i", "j"), payoff, group_size, pop_size, 0.1)
        pi_i, pi_j = group_expected_payoffs(setup, "i", "j", x)
        assert pi_i == pytest.approx(expected_i, abs=1e-12)
        assert pi_j == pytest.approx(expected_j, abs=1e-12)
        assert pi_i == pytest.approx(1.8, abs=1e-12)

    def test_all_mutant_population_plays_pure_groups(self):
        def payoff(focal, other, k):
            return 10.0 * k

        setup = EvolutionSetup.group(("i", "j"), payoff, 4, 12, 0.1)
        pi_i, _ = group_expected_payoffs(setup, "i", "j", 12)
        assert pi_i == pytest.approx(40.0)

    @given(st.integers(3, 12), st.integers(1, 11), st.floats(0.1, 2.0))
    @settings(max_examples=50)
    def test_pairwise_groups_reduce_to_average_payoffs(self, pop_size, x, scale):
        if x >= pop_size:
            x = pop_size - 1
        entries = {("A", "A"): 2.0 * scale, ("A", "B"): 5.0 * scale,
                   ("B", "A"): 1.0 * scale, ("B", "B"): 0.0}

        def pair_as_group(focal, other, k):
            partner = focal if k == 2 else other
            return entries[focal, partner]

        pair_setup = table_setup(entries, pop_size, 0.1)
        group_setup = EvolutionSetup.group(("A", "B"), pair_as_group, 2, pop_size, 0.1)
        pi = pair_average_payoffs(pair_setup, "A", "B", x)
        gi = group_expected_payoffs(group_setup, "A", "B", x)
        assert gi[0] == pytest.approx(pi[0], abs=1e-12)
        assert gi[1] == pytest.approx(pi[1], abs=1e-12)


class TestImitationProbability:
    def test_equal_fitness_is_even(self):
        assert imitation_probability(1.3, 2.0, 2.0) == 0.5

    def test_neutral_drift_is_even(self):
        assert imitation_probability(0.0, -5.0, 17.0) == 0.5

    def test_direct_value(self):
        assert imitation_probability(1.0, 0.0, 2.0) == pytest.approx(1 / (1 + math.exp(-2)))

    def test_extreme_arguments_do_not_overflow(self):
        assert imitation_probability(1e6, 0.0, 1e6) == pytest.approx(1.0)
        assert imitation_probability(1e6, 1e6, 0.0) == pytest.approx(0.0)


class TestFixationProbability:
    @pytest.mark.parametrize("pop_size", [10, 100])
    def test_neutral_drift_is_exactly_one_over_z(self, pop_size):
        setup = base_game_setup(pop_size, 0.0)
        assert fixation_probability(setup, "A", "B") == 1.0 / pop_size

    @pytest.mark.parametrize("beta", [0.01, 0.1, 1.0])
    def test_constant_gap_geometric_form(self, beta):
        pop_size = 10
        setup = constant_gap_setup(pop_size, beta)
        expected = math.expm1(-beta) / math.expm1(-pop_size * beta)
        assert fixation_probability(setup, "A", "B") == pytest.approx(expected, abs=1e-10)

    def test_constant_gap_example_value(self):
        # (1 - e^-0.1) / (1 - e^-1), frozen from the closed form
        setup = constant_gap_setup(10, 0.1)
        assert fixation_probability(setup, "A", "B") == pytest.approx(0.1505449880, abs=1e-9)

    def test_extreme_selection_saturates_without_overflow(self):
        setup = base_game_setup(50, 1e4, a=5.0, b=5.0, c=0.0, d=0.0)
        rho = fixation_probability(setup, "A", "B")
        assert 0.0 <= rho <= 1.0
        assert rho == pytest.approx(1.0)
        assert fixation_probability(setup, "B", "A") == pytest.approx(0.0)

    @given(st.floats(-3, 3), st.floats(-3, 3), st.floats(-3, 3), st.floats(-3, 3),
           st.floats(0.0, 2.0), st.floats(-5, 5))
    @settings(max_examples=100)
    def test_uniform_payoff_shifts_leave_fixation_unchanged(self, a, b, c, d, beta, shift):
        base = {("A", "A"): a, ("A", "B"): b, ("B", "A"): c, ("B", "B"): d}
        moved = {key: value + shift for key, value in base.items()}
        rho_base = fixation_probability(table_setup(base, 20, beta), "A", "B")
        rho_moved = fixation_probability(table_setup(moved, 20, beta), "A", "B")
        assert rho_moved == pytest.approx(rho_base, abs=1e-11)

    @given(st.floats(-3, 3), st.floats(-3, 3), st.floats(-3, 3), st.floats(-3, 3),
           st.floats(0.0, 1.5), st.integers(3, 8))
    @settings(max_examples=150)
    def test_matches_absorbing_chain_solve(self, a, b, c, d, beta, pop_size):
        entries = {("A", "A"): a, ("A", "B"): b, ("B", "A"): c, ("B", "B"): d}
        setup = table_setup(entries, pop_size, beta)
        rho = fixation_probability(setup, "A", "B")
        solved = absorbing_chain_fixation(setup, "A", "B")
        assert rho == pytest.approx(solved, abs=1e-12)
        assert 0.0 < rho < 1.0


class TestTransitionMatrixAndStationary:
    def test_neutral_chain_is_uniform(self):
        setup = base_game_setup(10, 0.0)
        rho = fixation_matrix(setup)
        matrix = transition_matrix(rho)
        off = matrix[~np.eye(2, dtype=bool)]
        assert np.allclose(off, 1.0 / (10 * 1), atol=1e-15)
        freqs = stationary_distribution(matrix)
        assert np.allclose(freqs, 0.5, atol=1e-12)

    def test_two_state_detailed_balance(self):
        setup = base_game_setup(30, 0.2)
        rho_ba = fixation_probability(setup, "A", "B")   # A mutant fixates in B
        rho_ab = fixation_probability(setup, "B", "A")
        matrix = transition_matrix(fixation_matrix(setup))
        freqs = stationary_distribution(matrix)
        expected_a = rho_ba / (rho_ab + rho_ba)
        assert freqs[0] == pytest.approx(expected_a, abs=1e-12)

    def test_row_sums_are_one(self):
        rng = np.random.default_rng(3)
        rho = rng.uniform(0.0, 1.0, size=(8, 8))
        matrix = transition_matrix(rho)
        assert np.allclose(matrix.sum(axis=1), 1.0, atol=1e-12)
        assert (matrix[~np.eye(8, dtype=bool)] >= 0).all()

    def test_stationary_is_permutation_equivariant(self):
        rng = np.random.default_rng(11)
        rho = rng.uniform(0.01, 0.9, size=(5, 5))
        freqs = stationary_distribution(transition_matrix(rho))
        perm = rng.permutation(5)
        rho_perm = rho[np.ix_(perm, perm)]
        freqs_perm = stationary_distribution(transition_matrix(rho_perm))
        assert np.allclose(freqs_perm, freqs[perm], atol=1e-12)

    def test_reducible_chain_raises(self):
        with pytest.raises(DegenerateChainError):
            stationary_distribution(np.eye(3))

    def test_residual_bound_holds(self):
        setup = base_game_setup(100, 1.0)
        matrix = transition_matrix(fixation_matrix(setup))
        freqs = stationary_distribution(matrix)
        assert np.abs(freqs @ matrix - freqs).max() <= 1e-10


class TestWelfare:
    def test_point_mass(self):
        assert expected_welfare(np.array([1.0, 0.0]), np.array([2.95, 0.0])) == 2.95

    def test_uniform_two_state(self):
        assert expected_welfare(np.array([0.5, 0.5]), np.array([2.0, 0.0])) == 1.0


class TestMonteCarloOracle:
    def test_deterministic_for_fixed_seed(self):
        setup = base_game_setup(8, 0.2)
        first = monte_carlo_fixation(setup, "A", "B", 2000, seed=7)
        second = monte_carlo_fixation(setup, "A", "B", 2000, seed=7)
        assert first == second

    def test_neutral_drift_within_three_sigma(self):
        setup = base_game_setup(10, 0.0)
        mc = monte_carlo_fixation(setup, "A", "B", 100_000, seed=5)
        assert abs(mc.estimate - 0.1) <= 3 * mc.std_error

    def test_constant_gap_within_three_sigma(self):
        setup = constant_gap_setup(10, 0.1)
        exact = math.expm1(-0.1) / math.expm1(-1.0)
        mc = monte_carlo_fixation(setup, "A", "B", 100_000, seed=6)
        assert abs(mc.estimate - exact) <= 3 * mc.std_error

    def test_agrees_with_analytic_fixation(self):
        setup = base_game_setup(8, 0.3)
        rho = fixation_probability(setup, "A", "B")
        mc = monte_carlo_fixation(setup, "A", "B", 50_000, seed=9)
        assert abs(mc.estimate - rho) <= 3 * max(mc.std_error, 1e-9)
