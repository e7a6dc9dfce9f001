"""Acceptance gate: every criterion at its stated tolerance and runtime budget.

Run with ``pytest tests/test_acceptance.py -s`` to see one PASS/FAIL line per
criterion.
"""

import filecmp
import time

import numpy as np
import pytest

from commitcoord import dynamics, validation
from commitcoord.cli import main as cli_main
from commitcoord.games import (
    CommitmentTerms,
    GroupParams,
    GroupStrategy,
    MarketParams,
    PairStrategy,
    fair_transfers,
    group_payoff,
    pair_payoff,
)
from commitcoord.riskdom import (
    Dominance,
    alpha_threshold,
    group_dominance,
    group_epsilon_thresholds,
    hp_vs_lp,
)
from commitcoord.scenarios import PRESETS, run_scenario

FIG_MARKET = dict(cost_high=1.0, cost_low=1.0, benefit_high=6.0, benefit_low=2.0)


def report(name: str, ok: bool, elapsed: float, budget: float, detail: str) -> None:
    status = "PASS" if ok and elapsed < budget else "FAIL"
    print(f"{status} {name} [{elapsed:.2f}s / budget {budget:.0f}s]: {detail}")
    assert ok, f"{name}: {detail}"
    assert elapsed < budget, f"{name}: runtime {elapsed:.2f}s over budget {budget}s"


def test_criterion_neutral_drift_exactness():
    start = time.perf_counter()
    worst_rho = worst_freq = 0.0
    for pop_size in (10, 100):
        for setup in (validation._pair_setup(0.3, 1.0, 6.0, pop_size, 0.0),
                      validation._group_setup(0.5, 1.0, 2, pop_size, 0.0)):
            rho = dynamics.fixation_matrix(setup)
            q = len(setup.strategies)
            off = rho[~np.eye(q, dtype=bool)]
            worst_rho = max(worst_rho, float(np.abs(off - 1.0 / pop_size).max()))
            freqs = dynamics.stationary_distribution(dynamics.transition_matrix(rho))
            worst_freq = max(worst_freq, float(np.abs(freqs - 1.0 / q).max()))
    elapsed = time.perf_counter() - start
    ok = worst_rho <= 1e-12 and worst_freq <= 1e-10
    report("neutral-drift-exactness", ok, elapsed, 1.0,
           f"max |rho-1/Z|={worst_rho:.2e} (tol 1e-12), "
           f"max |pi-1/q|={worst_freq:.2e} (tol 1e-10)")


def test_criterion_closed_form_fixation():
    start = time.perf_counter()
    pop_size, gap = 10, 1.0
    table = {("A", "A"): gap, ("A", "B"): gap, ("B", "A"): 0.0, ("B", "B"): 0.0}
    worst = 0.0
    for beta in (0.01, 0.1, 1.0):
        setup = dynamics.EvolutionSetup.pairwise(
            ("A", "B"), lambda s, t: table[s, t], pop_size, beta)
        rho = dynamics.fixation_probability(setup, "A", "B")
        exact = np.expm1(-beta * gap) / np.expm1(-pop_size * beta * gap)
        worst = max(worst, abs(rho - exact))
    elapsed = time.perf_counter() - start
    report("closed-form-fixation", worst <= 1e-10, elapsed, 1.0,
           f"max error {worst:.2e} (tol 1e-10)")


def test_criterion_brute_force_and_monte_carlo_oracle():
    start = time.perf_counter()
    seed, runs = 20240, 100_000
    worst_solve = worst_pull = 0.0
    for i, (setup, mutant, resident) in enumerate(validation.random_pair_points(seed)):
        rho = dynamics.fixation_probability(setup, mutant, resident)
        solved = dynamics.absorbing_chain_fixation(setup, mutant, resident)
        worst_solve = max(worst_solve, abs(rho - solved))
        mc = dynamics.monte_carlo_fixation(setup, mutant, resident, runs, seed + i)
        pull = abs(mc.estimate - rho) / max(mc.std_error, 1e-12)
        worst_pull = max(worst_pull, pull)
    elapsed = time.perf_counter() - start
    ok = worst_solve <= 1e-12 and worst_pull <= 3.0
    report("brute-force-oracle", ok, elapsed, 30.0,
           f"max |rho - solve|={worst_solve:.2e} (tol 1e-12), "
           f"max MC pull={worst_pull:.2f} sigma (tol 3)")


def test_criterion_pairwise_alpha_thresholds():
    start = time.perf_counter()
    market = MarketParams(alpha=0.5, **FIG_MARKET)
    expectations = {0.1: 0.6583333333333333, 1.0: 0.5833333333333333, 2.0: 0.5}
    worst_bound = max(abs(alpha_threshold(market, eps, 6.0) - want)
                      for eps, want in expectations.items())

    rows = [r for r in run_scenario(PRESETS["fig1"]) if r.params["beta"] == 0.1]
    worst_gap = 0.0
    for eps, want in expectations.items():
        series = [(r.params["alpha"], r.proposer_frequency)
                  for r in rows if r.params["eps"] == eps]
        series.sort()
        crossing = None
        for (a0, f0), (a1, f1) in zip(series, series[1:]):
            if (f0 - 0.5) * (f1 - 0.5) <= 0 and f0 != f1:
                crossing = a0 + (0.5 - f0) * (a1 - a0) / (f1 - f0)
                break
        assert crossing is not None, f"no 0.5 crossing found for eps={eps}"
        worst_gap = max(worst_gap, abs(crossing - want))
    elapsed = time.perf_counter() - start
    ok = worst_bound <= 1e-9 and worst_gap <= 0.05
    report("pairwise-alpha-thresholds", ok, elapsed, 120.0,
           f"analytic error {worst_bound:.2e} (tol 1e-9), "
           f"crossing offset {worst_gap:.3f} (tol 0.05)")


def test_criterion_group_epsilon_thresholds():
    start = time.perf_counter()
    group = GroupParams(MarketParams(alpha=0.5, **FIG_MARKET), 5, 2)
    bounds = group_epsilon_thresholds(group).epsilon_bounds
    expected = {GroupStrategy.HC: 1.0511, GroupStrategy.LC: 1.3139,
                GroupStrategy.HN: 12.0, GroupStrategy.LN: 58.75}
    worst = max(abs(bounds[s] - v) for s, v in expected.items())
    sign_ok = True
    for opponent, bound in bounds.items():
        margin = 0.11
        below = group_dominance(group, CommitmentTerms(max(bound - margin, 0.0), 0.0),
                                GroupStrategy.HP, opponent)
        above = group_dominance(group, CommitmentTerms(bound + margin, 0.0),
                                GroupStrategy.HP, opponent)
        sign_ok = sign_ok and below.holds and not above.holds
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-3 and sign_ok
    report("group-epsilon-thresholds", ok, elapsed, 60.0,
           f"max bound error {worst:.2e} (tol 1e-3), sign agreement={sign_ok}")


def test_criterion_welfare_improvement():
    start = time.perf_counter()
    pair_rows = [r for r in run_scenario(PRESETS["fig3"])
                 if r.params["alpha"] == pytest.approx(0.3)
                 and r.params["eps"] == 0.1 and r.params["beta"] == 0.1
                 and r.params["benefit_high"] == 6.0]
    assert len(pair_rows) == 1
    pair_ok = pair_rows[0].welfare_commit > pair_rows[0].welfare_baseline

    group_rows = [r for r in run_scenario(PRESETS["fig7"]) if r.params["eps"] == 0.1]
    group_ok = all(r.welfare_commit >= r.welfare_baseline - 1e-9
                   for r in group_rows if r.params["mu"] < 5)
    elapsed = time.perf_counter() - start
    detail = (f"pairwise commit {pair_rows[0].welfare_commit:.3f} > "
              f"baseline {pair_rows[0].welfare_baseline:.3f}; "
              f"group mu<5 dominance over {sum(1 for r in group_rows if r.params['mu'] < 5)}"
              " rows")
    report("welfare-improvement", pair_ok and group_ok, elapsed, 120.0, detail)


def test_criterion_intermediate_mu_peak():
    start = time.perf_counter()
    rows = [r for r in run_scenario(PRESETS["fig6"])
            if r.params["benefit_high"] == 6.0 and r.params["eps"] <= 1.0 + 1e-12]
    by_point = {(round(r.params["eps"], 10), r.params["mu"]): r.proposer_frequency
                for r in rows}
    eps_values = sorted({eps for eps, _ in by_point})
    ok = all(by_point[eps, 2] > by_point[eps, 5] for eps in eps_values)
    elapsed = time.perf_counter() - start
    worst_margin = min(by_point[eps, 2] - by_point[eps, 5] for eps in eps_values)
    report("intermediate-mu-peak", ok, elapsed, 60.0,
           f"min margin freq(mu=2)-freq(mu=5) = {worst_margin:.3f} over "
           f"{len(eps_values)} eps values <= 1")


def test_criterion_fair_agreement_identity():
    start = time.perf_counter()
    rng = np.random.default_rng(424242)
    checked = 0
    ok = True
    while checked < 100:
        benefit_high = rng.uniform(2.0, 10.0)
        benefit_low = rng.uniform(0.1, benefit_high)
        cost_high = rng.uniform(0.0, 2.0)
        cost_low = rng.uniform(0.0, 2.0)
        if benefit_low - cost_low >= benefit_high - cost_high:
            continue
        market = MarketParams(cost_high, cost_low, benefit_high, benefit_low,
                              rng.uniform(0.05, 0.95))
        eps = rng.uniform(0.0, 3.0)
        terms = CommitmentTerms.fair(market, eps, rng.uniform(0.0, 8.0))
        hp_hc = pair_payoff(market, terms, PairStrategy.HP, PairStrategy.HC)
        hc_hp = pair_payoff(market, terms, PairStrategy.HC, PairStrategy.HP)
        ok = ok and hp_hc == hc_hp and hp_vs_lp(terms, market) is Dominance.TIE
        checked += 1
    elapsed = time.perf_counter() - start
    report("fair-agreement-identity", ok, elapsed, 60.0,
           f"{checked} random draws, bit-exact equality and exact ties")


def test_criterion_determinism(tmp_path):
    start = time.perf_counter()
    paths = []
    for name, jobs in (("serial-1", 1), ("serial-2", 1), ("parallel", 3)):
        out_dir = tmp_path / name
        code = cli_main(["fig", "fig1", "--out", str(out_dir), "--jobs", str(jobs)])
        assert code == 0
        paths.append(out_dir / "fig1.csv")
    same_serial = filecmp.cmp(paths[0], paths[1], shallow=False)
    same_parallel = filecmp.cmp(paths[0], paths[2], shallow=False)
    elapsed = time.perf_counter() - start
    report("determinism", same_serial and same_parallel, elapsed, 120.0,
           f"serial rerun identical={same_serial}, jobs=3 identical={same_parallel}")
