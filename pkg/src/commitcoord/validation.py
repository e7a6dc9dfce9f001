"""Self-checks wiring the engine to its independent oracles.

Each check returns a named pass/fail result; the CLI ``validate`` subcommand
runs the whole battery.  The checks mirror the package's core guarantees:
neutral drift is exact, fixation matches the constant-gap closed form and a
direct absorbing-chain solve, the Monte Carlo estimator agrees with the
analytic formula, and numeric risk-dominance verdicts match the analytic
parameter bounds away from their boundaries.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import dynamics, riskdom
from .games import (
    CommitmentTerms,
    GroupParams,
    GroupStrategy,
    MarketParams,
    PairStrategy,
    group_payoff,
    pair_payoff,
)

FIG1_MARKET = dict(cost_high=1.0, cost_low=1.0, benefit_high=6.0, benefit_low=2.0)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def _pair_setup(alpha: float, eps: float, delta: float, pop_size: int,
                beta: float) -> dynamics.EvolutionSetup:
    market = MarketParams(alpha=alpha, **FIG1_MARKET)
    terms = CommitmentTerms.fair(market, eps, delta)
    table = {(s, t): pair_payoff(market, terms, s, t)
             for s in PairStrategy for t in PairStrategy}
    return dynamics.EvolutionSetup.pairwise(
        tuple(PairStrategy), lambda s, t: table[s, t], pop_size, beta)


def _group_setup(alpha: float, eps: float, mu: int, pop_size: int,
                 beta: float) -> dynamics.EvolutionSetup:
    market = MarketParams(alpha=alpha, **FIG1_MARKET)
    group = GroupParams(market, group_size=5, demand_high=mu)
    terms = CommitmentTerms(eps, 0.0)
    table = {(s, t, k): group_payoff(group, terms, s, t, k)
             for s in GroupStrategy for t in GroupStrategy for k in range(1, 6)}
    return dynamics.EvolutionSetup.group(
        tuple(GroupStrategy), lambda s, t, k: table[s, t, k], 5, pop_size, beta)


def check_neutral_drift() -> CheckResult:
    """At zero selection every fixation probability is 1/Z and the chain is uniform."""
    worst_rho = worst_freq = 0.0
    for pop_size in (10, 100):
        for setup in (_pair_setup(0.3, 1.0, 6.0, pop_size, 0.0),
                      _group_setup(0.5, 1.0, 2, pop_size, 0.0)):
            rho = dynamics.fixation_matrix(setup)
            q = len(setup.strategies)
            off = rho[~np.eye(q, dtype=bool)]
            worst_rho = max(worst_rho, float(np.abs(off - 1.0 / pop_size).max()))
            freqs = dynamics.stationary_distribution(dynamics.transition_matrix(rho))
            worst_freq = max(worst_freq, float(np.abs(freqs - 1.0 / q).max()))
    passed = worst_rho <= 1e-12 and worst_freq <= 1e-10
    return CheckResult("neutral-drift", passed,
                       f"max |rho - 1/Z| = {worst_rho:.2e}, max |pi - 1/q| = {worst_freq:.2e}")


def check_constant_gap() -> CheckResult:
    """A constant payoff advantage has a geometric-series fixation probability."""
    pop_size, gap = 10, 1.0
    table = {("A", "A"): gap, ("A", "B"): gap, ("B", "A"): 0.0, ("B", "B"): 0.0}
    worst = 0.0
    for beta in (0.01, 0.1, 1.0):
        setup = dynamics.EvolutionSetup.pairwise(
            ("A", "B"), lambda s, t: table[s, t], pop_size, beta)
        rho = dynamics.fixation_probability(setup, "A", "B")
        exact = math.expm1(-beta * gap) / math.expm1(-pop_size * beta * gap)
        worst = max(worst, abs(rho - exact))
    return CheckResult("fixation-closed-form", worst <= 1e-10, f"max error = {worst:.2e}")


def random_pair_points(seed: int, count: int = 5):
    """Seeded draws of (setup, mutant, resident) on random commitment games, Z=8."""
    rng = np.random.default_rng(seed)
    points = []
    while len(points) < count:
        benefit_high = rng.uniform(3.0, 8.0)
        benefit_low = rng.uniform(0.5, benefit_high)
        cost_high = rng.uniform(0.0, 2.0)
        cost_low = rng.uniform(0.0, 2.0)
        if benefit_low - cost_low >= benefit_high - cost_high:
            continue
        market = MarketParams(cost_high, cost_low, benefit_high, benefit_low,
                              rng.uniform(0.1, 0.9))
        terms = CommitmentTerms.fair(market, rng.uniform(0.0, 2.0), rng.uniform(0.0, 8.0))
        table = {(s, t): pair_payoff(market, terms, s, t)
                 for s in PairStrategy for t in PairStrategy}
        setup = dynamics.EvolutionSetup.pairwise(
            tuple(PairStrategy),
            lambda s, t, _table=table: _table[s, t],
            8, rng.uniform(0.05, 0.5))
        mutant, resident = rng.choice(list(PairStrategy), size=2, replace=False)
        points.append((setup, mutant, resident))
    return points


def check_absorbing_chain(seed: int = 20240) -> CheckResult:
    """Analytic fixation equals the dense absorbing-chain solve at Z=8."""
    worst = 0.0
    for setup, mutant, resident in random_pair_points(seed):
        rho = dynamics.fixation_probability(setup, mutant, resident)
        solved = dynamics.absorbing_chain_fixation(setup, mutant, resident)
        worst = max(worst, abs(rho - solved))
    return CheckResult("absorbing-chain-oracle", worst <= 1e-12, f"max error = {worst:.2e}")


def check_monte_carlo(seed: int = 20240, runs: int = 100_000) -> CheckResult:
    """Analytic fixation sits within three standard errors of the simulation."""
    worst = 0.0
    ok = True
    for i, (setup, mutant, resident) in enumerate(random_pair_points(seed)):
        rho = dynamics.fixation_probability(setup, mutant, resident)
        mc = dynamics.monte_carlo_fixation(setup, mutant, resident, runs, seed + i)
        sigma = max(mc.std_error, 1e-12)
        pull = abs(mc.estimate - rho) / sigma
        worst = max(worst, pull)
        ok = ok and pull <= 3.0
    return CheckResult("monte-carlo-oracle", ok, f"max |deviation| = {worst:.2f} sigma")


def check_pair_risk_dominance(margin: float = 0.15) -> CheckResult:
    """Numeric dominance sums agree with analytic bounds outside a ±0.1 band."""
    failures = []
    for alpha, delta in ((0.2, 6.0), (0.4, 6.0), (0.3, 2.0)):
        market = MarketParams(alpha=alpha, **FIG1_MARKET)
        probe = riskdom.pair_thresholds(market, CommitmentTerms.fair(market, 0.0, delta),
                                        fair=True)
        for proposer, bounds in ((PairStrategy.HP, probe.epsilon_bounds_hp),
                                 (PairStrategy.LP, probe.epsilon_bounds_lp)):
            for opponent, bound in bounds.items():
                for eps, expect_holds in ((bound - margin, True), (bound + margin, False)):
                    if eps < 0:
                        continue
                    terms = CommitmentTerms.fair(market, eps, delta)
                    verdict = riskdom.pair_dominance(market, terms, proposer, opponent)
                    if verdict.holds != expect_holds:
                        failures.append(
                            f"{proposer.name} vs {opponent.name} at eps={eps:.3f}")
    detail = "all verdicts match bounds" if not failures else "; ".join(failures[:4])
    return CheckResult("pair-risk-dominance", not failures, detail)


def check_group_risk_dominance(margin: float = 0.11) -> CheckResult:
    """Group dominance sums change sign across each arrangement-cost ceiling."""
    market = MarketParams(alpha=0.5, **FIG1_MARKET)
    group = GroupParams(market, group_size=5, demand_high=2)
    bounds = riskdom.group_epsilon_thresholds(group).epsilon_bounds
    failures = []
    for opponent, bound in bounds.items():
        for eps, expect_holds in ((bound - margin, True), (bound + margin, False)):
            if eps < 0:
                continue
            terms = CommitmentTerms(eps, 0.0)
            verdict = riskdom.group_dominance(group, terms, GroupStrategy.HP, opponent)
            if verdict.holds != expect_holds:
                failures.append(f"HP vs {opponent.name} at eps={eps:.3f}")
    detail = "all verdicts match bounds" if not failures else "; ".join(failures)
    return CheckResult("group-risk-dominance", not failures, detail)


def run_validation(quick: bool = False, seed: int = 20240) -> list[CheckResult]:
    runs = 20_000 if quick else 100_000
    return [
        check_neutral_drift(),
        check_constant_gap(),
        check_absorbing_chain(seed),
        check_monte_carlo(seed, runs),
        check_pair_risk_dominance(),
        check_group_risk_dominance(),
    ]
