"""Commitment-based coordination in technology-adoption games.

Payoff definitions (pairwise and N-player, with and without prior
commitments), finite-population imitation dynamics in the small-mutation
limit, analytic risk-dominance thresholds, and reproducible parameter sweeps
behind the ``commitcoord`` CLI.
"""

from .games import (
    Action,
    CommitmentTerms,
    GroupParams,
    GroupStrategy,
    MarketParams,
    PairStrategy,
    base_payoff,
    benefit_fraction,
    fair_transfers,
    group_payoff,
    optimal_group_payoff,
    pair_payoff,
    pair_payoff_matrix,
    role_payoff,
)
from .dynamics import (
    DegenerateChainError,
    EvolutionSetup,
    MonteCarloFixation,
    StationaryResult,
    absorbing_chain_fixation,
    expected_payoffs,
    expected_welfare,
    fixation_matrix,
    fixation_probability,
    group_expected_payoffs,
    imitation_probability,
    monte_carlo_fixation,
    pair_average_payoffs,
    stationary_distribution,
    stationary_result,
    transition_matrix,
)
from .riskdom import (
    Dominance,
    GroupThresholds,
    PairThresholds,
    alpha_threshold,
    group_dominance,
    group_epsilon_thresholds,
    harmonic_number,
    hp_vs_lp,
    pair_dominance,
    pair_thresholds,
    risk_dominance_check,
)
from .scenarios import (
    ConfigError,
    PRESETS,
    ResultRow,
    ScenarioConfig,
    SweepAxis,
    emit_csv,
    load_config,
    run_scenario,
)

__version__ = "0.1.0"
