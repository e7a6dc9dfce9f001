"""Closed-form risk-dominance conditions for commitment strategies.

Strategy i risk-dominates j when a lone i-mutant invades a j-population more
readily than the reverse, which for any selection intensity and large
populations reduces to comparing payoff sums over group compositions:

    sum_{k=1..N} pi_i(k)  >=  sum_{k=0..N-1} pi_j(k),

with k the number of i-players in the group.  This module evaluates those
sums numerically from the game payoffs and provides the analytic parameter
bounds they imply: arrangement-cost ceilings per opponent, transfer and
compensation bounds, and the competitiveness (alpha) ceiling for the
pairwise fair-agreement case.

Bounds are non-strict: equality is reported as a tie.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .games import (
    CommitmentTerms,
    GroupParams,
    GroupStrategy,
    MarketParams,
    PairStrategy,
    _fair_theta1,
    _fair_theta2,
    group_payoff,
    pair_payoff,
    role_payoff,
    Action,
)


class Dominance(Enum):
    DOMINANT = "dominant"
    TIE = "tie"
    DOMINATED = "dominated"

    @property
    def holds(self) -> bool:
        """Non-strict dominance of the focal strategy."""
        return self is not Dominance.DOMINATED


def _tie_tolerance(*values: float) -> float:
    return 1e-12 * max(1.0, *(abs(v) for v in values))


def risk_dominance_check(payoff_sum_focal: float, payoff_sum_rival: float,
                         tol: float | None = None) -> Dominance:
    """Compare composition-summed payoffs; equality within ``tol`` is a tie."""
    if tol is None:
        tol = _tie_tolerance(payoff_sum_focal, payoff_sum_rival)
    gap = payoff_sum_focal - payoff_sum_rival
    if abs(gap) <= tol:
        return Dominance.TIE
    return Dominance.DOMINANT if gap > 0 else Dominance.DOMINATED


def pair_payoff_sums(market: MarketParams, terms: CommitmentTerms,
                     focal: PairStrategy, rival: PairStrategy) -> tuple[float, float]:
    """The two pairwise dominance sums (pi_ii + pi_ij, pi_jj + pi_ji)."""
    s_focal = pair_payoff(market, terms, focal, focal) + pair_payoff(market, terms, focal, rival)
    s_rival = pair_payoff(market, terms, rival, rival) + pair_payoff(market, terms, rival, focal)
    return s_focal, s_rival


def pair_dominance(market: MarketParams, terms: CommitmentTerms,
                   focal: PairStrategy, rival: PairStrategy) -> Dominance:
    return risk_dominance_check(*pair_payoff_sums(market, terms, focal, rival))


def group_payoff_sums(group: GroupParams, terms: CommitmentTerms,
                      focal: GroupStrategy, rival: GroupStrategy) -> tuple[float, float]:
    """Dominance sums over all two-type group compositions."""
    n = group.group_size
    s_focal = sum(group_payoff(group, terms, focal, rival, k) for k in range(1, n + 1))
    s_rival = sum(group_payoff(group, terms, rival, focal, n - k) for k in range(n))
    return s_focal, s_rival


def group_dominance(group: GroupParams, terms: CommitmentTerms,
                    focal: GroupStrategy, rival: GroupStrategy) -> Dominance:
    return risk_dominance_check(*group_payoff_sums(group, terms, focal, rival))


def hp_vs_lp(terms: CommitmentTerms, market: MarketParams) -> Dominance:
    """Which proposer risk-dominates: HP when the combined transfer stays below
    the net-benefit gap, LP when it exceeds it, a tie at exact fairness."""
    b, c, eps = market.high_net, market.low_net, terms.arrange_cost
    # Deviations from the fair transfers cancel exactly when the terms were
    # built from them, making the fair tie exact rather than within-epsilon.
    gap = ((terms.transfer_from_hp - _fair_theta1(b, c, eps))
           + (terms.transfer_to_lp - _fair_theta2(b, c, eps)))
    if abs(gap) <= _tie_tolerance(b, c):
        return Dominance.TIE
    return Dominance.DOMINANT if gap < 0 else Dominance.DOMINATED


def alpha_threshold(market: MarketParams, arrange_cost: float,
                    dishonour_comp: float) -> float:
    """Competitiveness ceiling below which fair-agreement proposers risk-dominate
    every non-proposing strategy.  Ignores ``market.alpha``; a value >= 1 means
    the condition never binds on (0, 1)."""
    m = max(arrange_cost, 3 * arrange_cost - 4 * dishonour_comp)
    ch, cl = market.cost_high, market.cost_low
    bh, bl = market.benefit_high, market.benefit_low
    return 0.5 + min((ch + bl - cl - m) / (2 * bh), (cl + bh - ch - m) / (2 * bl))


@dataclass(frozen=True)
class PairThresholds:
    """Viability bounds for pairwise commitment proposers.

    ``epsilon_bounds_hp`` / ``_lp`` hold the per-opponent arrangement-cost
    ceilings; ``epsilon_bound`` is their overall minimum and
    ``binding_opponent`` the opponent attaining it.  The transfer and
    compensation bounds are evaluated at the supplied arrangement cost, the
    alpha bound additionally assumes fair transfers.
    """

    epsilon_bounds_hp: dict[PairStrategy, float]
    epsilon_bounds_lp: dict[PairStrategy, float]
    epsilon_bound: float
    binding_opponent: PairStrategy
    theta1_upper: float
    theta2_lower: float
    delta_lower: float
    alpha_upper: float


def pair_thresholds(market: MarketParams, terms: CommitmentTerms,
                    fair: bool = False) -> PairThresholds:
    """Arrangement-cost ceilings per opponent plus transfer/compensation bounds.

    With ``fair=False`` the transfers are taken as fixed at their supplied
    values; with ``fair=True`` they are assumed to track the fair split as the
    arrangement cost varies, which collapses the acceptor ceilings onto the
    non-acceptor ones.
    """
    a, b, c, d = market.payoff_entries()
    th1, th2, delta = terms.transfer_from_hp, terms.transfer_to_lp, terms.dishonour_comp
    if fair:
        hp_hc, hp_lc = b + c - 2 * a, b + c - 2 * d
        lp_hc, lp_lc = b + c - 2 * a, b + c - 2 * d
    else:
        hp_hc, hp_lc = (3 * b - c - 2 * a - 4 * th1) / 3, (3 * b - c - 2 * d - 4 * th1) / 3
        lp_hc, lp_lc = (3 * c - b - 2 * a + 4 * th2) / 3, (3 * c - b - 2 * d + 4 * th2) / 3
    hf_bound = (b + c - 2 * a + 4 * delta) / 3
    lf_bound = (b + c - 2 * d + 4 * delta) / 3
    hp = {
        PairStrategy.HN: b + c - 2 * a,
        PairStrategy.LN: 3 * b - c - 2 * d,
        PairStrategy.HC: hp_hc,
        PairStrategy.LC: hp_lc,
        PairStrategy.HF: hf_bound,
        PairStrategy.LF: lf_bound,
    }
    lp = {
        PairStrategy.HN: b + c - 2 * a,
        PairStrategy.LN: 3 * b - c - 2 * d,
        PairStrategy.HC: lp_hc,
        PairStrategy.LC: lp_lc,
        PairStrategy.HF: hf_bound,
        PairStrategy.LF: lf_bound,
    }
    binding = min(list(hp) + list(lp), key=lambda s: min(hp[s], lp[s]))
    eps, peak = terms.arrange_cost, max(a, d)
    return PairThresholds(
        epsilon_bounds_hp=hp,
        epsilon_bounds_lp=lp,
        epsilon_bound=min(min(hp.values()), min(lp.values())),
        binding_opponent=binding,
        theta1_upper=(3 * b - c - 3 * eps - 2 * peak) / 4,
        theta2_lower=(b - 3 * c + 3 * eps + 2 * peak) / 4,
        delta_lower=(3 * eps - b - c + 2 * peak) / 4,
        alpha_upper=alpha_threshold(market, eps, delta),
    )


def harmonic_number(n: int) -> float:
    """H_n = 1 + 1/2 + ... + 1/n."""
    if n < 1:
        raise ValueError("n must be positive")
    return sum(1.0 / k for k in range(1, n + 1))


@dataclass(frozen=True)
class GroupThresholds:
    """Arrangement-cost ceilings for group commitment proposers, per opponent."""

    epsilon_bounds: dict[GroupStrategy, float]
    epsilon_bound: float
    binding_opponent: GroupStrategy
    harmonic: float


def group_epsilon_thresholds(group: GroupParams) -> GroupThresholds:
    """Ceilings on the arrangement cost for proposers to risk-dominate each of
    HC, LC, HN and LN; fair agreements make the LP conditions identical."""
    n = group.group_size
    h_n = harmonic_number(n)
    a_opt = group.optimal_payoff
    pi_h_full = role_payoff(group, Action.H, n)
    pi_l_empty = role_payoff(group, Action.L, 0)
    sum_h = sum(role_payoff(group, Action.H, k) for k in range(1, n))
    sum_l = sum(role_payoff(group, Action.L, k) for k in range(n))
    bounds = {
        GroupStrategy.HC: (a_opt - pi_h_full) / h_n,
        GroupStrategy.LC: (a_opt - pi_l_empty) / h_n,
        GroupStrategy.HN: n * (a_opt - pi_h_full),
        GroupStrategy.LN: n * (a_opt + sum_h - sum_l),
    }
    binding = min(bounds, key=bounds.get)
    return GroupThresholds(bounds, bounds[binding], binding, h_n)
