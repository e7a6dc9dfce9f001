"""Technology-adoption coordination games, with and without prior commitments.

Firms choose between a high-benefit technology (H) and a low-benefit one (L).
When too many firms pick the same technology they compete for the same market
and only collect a fraction ``alpha`` of the benefit, so the collectively best
outcome is a coordinated mix.  Because the coordinated outcome pays the two
sides differently, a commitment deal pairs the action profile with
compensation transfers; proposing such a deal costs ``arrange_cost`` and
dishonouring an accepted deal costs ``dishonour_comp``.

Payoffs here are exact closed-form values (no sampling).  The module supplies
the pairwise 8-strategy game, the N-player 6-strategy game, and every payoff
entry the dynamics engine consumes.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


class Action(Enum):
    """A realized technology choice."""

    H = "H"
    L = "L"


@dataclass(frozen=True)
class MarketParams:
    """Costs and benefits of the two technologies plus market competitiveness.

    ``alpha`` in (0, 1) is the fraction of the benefit left to firms that end
    up on the same technology; small alpha means fierce competition.
    """

    cost_high: float
    cost_low: float
    benefit_high: float
    benefit_low: float
    alpha: float

    def __post_init__(self) -> None:
        if not 0.0 < self.alpha < 1.0:
            raise ValueError(f"alpha must lie in (0, 1), got {self.alpha}")
        if min(self.cost_high, self.cost_low, self.benefit_high, self.benefit_low) < 0:
            raise ValueError("costs and benefits must be nonnegative")
        if self.benefit_low > self.benefit_high:
            raise ValueError("benefit_low must not exceed benefit_high")
        if not self.low_net < self.high_net:
            raise ValueError("H must yield the greater net benefit (b_L - c_L < b_H - c_H)")

    @property
    def high_net(self) -> float:
        """Net payoff of a lone H adopter (full benefit)."""
        return self.benefit_high - self.cost_high

    @property
    def low_net(self) -> float:
        """Net payoff of a lone L adopter (full benefit)."""
        return self.benefit_low - self.cost_low

    @property
    def both_high(self) -> float:
        """Per-firm payoff when both pick H (competition discounts the benefit)."""
        return self.alpha * self.benefit_high - self.cost_high

    @property
    def both_low(self) -> float:
        """Per-firm payoff when both pick L."""
        return self.alpha * self.benefit_low - self.cost_low

    def payoff_entries(self) -> tuple[float, float, float, float]:
        """The four pairwise base-game entries (a, b, c, d) for the row player."""
        return self.both_high, self.high_net, self.low_net, self.both_low


@dataclass(frozen=True)
class CommitmentTerms:
    """Cost and compensation structure of a commitment deal.

    ``transfer_from_hp`` is paid by an H-intending proposer to the partner who
    honours the L side of the deal; ``transfer_to_lp`` is paid to an
    L-intending proposer by the partner taking the H side.  Either transfer
    may be any real; fairness is a special case, not a requirement.
    """

    arrange_cost: float
    dishonour_comp: float
    transfer_from_hp: float = 0.0
    transfer_to_lp: float = 0.0

    def __post_init__(self) -> None:
        if self.arrange_cost < 0:
            raise ValueError("arrange_cost must be nonnegative")
        if self.dishonour_comp < 0:
            raise ValueError("dishonour_comp must be nonnegative")

    @property
    def total_transfer(self) -> float:
        return self.transfer_from_hp + self.transfer_to_lp

    @classmethod
    def fair(cls, market: MarketParams, arrange_cost: float,
             dishonour_comp: float) -> "CommitmentTerms":
        """Terms whose transfers split the coordinated surplus evenly."""
        theta1, theta2 = fair_transfers(market, arrange_cost)
        return cls(arrange_cost, dishonour_comp, theta1, theta2)


def _fair_theta1(high_net: float, low_net: float, arrange_cost: float) -> float:
    # Shared expression tree with _fair_theta2/pair deal settlement: the fair
    # case must cancel exactly in floating point, not merely to rounding.
    return (high_net - low_net - arrange_cost) / 2


def _fair_theta2(high_net: float, low_net: float, arrange_cost: float) -> float:
    return (high_net - low_net + arrange_cost) / 2


def fair_transfers(market: MarketParams, arrange_cost: float) -> tuple[float, float]:
    """Transfers under which both parties of an honoured deal net the same.

    Returns (theta1, theta2) with theta1 = (b - c - eps)/2 and
    theta2 = (b - c + eps)/2 in terms of the net benefits b > c and the
    arrangement cost eps; both sides then earn (b + c - eps)/2.
    """
    if arrange_cost < 0:
        raise ValueError("arrange_cost must be nonnegative")
    b, c = market.high_net, market.low_net
    return _fair_theta1(b, c, arrange_cost), _fair_theta2(b, c, arrange_cost)


class PairStrategy(Enum):
    """The eight pairwise strategies: (intent, proposes, accepts, fakes).

    Proposers (HP/LP) pay to arrange a deal and play H when refused.
    Acceptors (HC/LC) honour any proposed deal, else play their intent.
    Non-acceptors (HN/LN) refuse deals and always play their intent.
    Fake committers (HF/LF) accept, then play the opposite of the agreement
    and owe the dishonour compensation.
    """

    HP = ("H", True, True, False)
    LP = ("L", True, True, False)
    HN = ("H", False, False, False)
    LN = ("L", False, False, False)
    HC = ("H", False, True, False)
    LC = ("L", False, True, False)
    HF = ("H", False, True, True)
    LF = ("L", False, True, True)

    def __init__(self, intent: str, proposes: bool, accepts: bool, fakes: bool):
        self.intent = Action(intent)
        self.proposes = proposes
        self.accepts = accepts
        self.fakes = fakes


class GroupStrategy(Enum):
    """The six N-player strategies; fake committers are excluded."""

    HP = ("H", True, True)
    LP = ("L", True, True)
    HN = ("H", False, False)
    LN = ("L", False, False)
    HC = ("H", False, True)
    LC = ("L", False, True)

    def __init__(self, intent: str, proposes: bool, accepts: bool):
        self.intent = Action(intent)
        self.proposes = proposes
        self.accepts = accepts


def base_payoff(market: MarketParams, own: Action, other: Action) -> float:
    """Row-player payoff of the commitment-free pairwise game."""
    if own is Action.H:
        return market.both_high if other is Action.H else market.high_net
    return market.both_low if other is Action.L else market.low_net


def _other_action(action: Action) -> Action:
    return Action.L if action is Action.H else Action.H


def _deal_payoff(market: MarketParams, terms: CommitmentTerms,
                 proposer: PairStrategy, responder: PairStrategy,
                 focal_is_proposer: bool) -> float:
    """Focal payoff once ``proposer`` has proposed to ``responder``."""
    eps = terms.arrange_cost
    if not responder.accepts:
        # Deal refused: no arrangement cost is sunk, the proposer falls back
        # to H and the responder plays its intent.
        own = Action.H if focal_is_proposer else responder.intent
        other = responder.intent if focal_is_proposer else Action.H
        return base_payoff(market, own, other)
    if responder.fakes:
        # The faker plays the opposite of the agreed action, i.e. it copies
        # the proposer's own intent, and owes the compensation.
        game = base_payoff(market, proposer.intent, proposer.intent)
        if focal_is_proposer:
            return game - eps + terms.dishonour_comp
        return game - terms.dishonour_comp
    # Honoured deal.  Both sides are written as the fair midpoint plus the
    # deviation of the actual transfer from the fair one, so a fair agreement
    # yields bit-identical payoffs on the two sides.
    b, c = market.high_net, market.low_net
    mid = (b + c - eps) / 2
    if proposer.intent is Action.H:
        dev = _fair_theta1(b, c, eps) - terms.transfer_from_hp
    else:
        dev = terms.transfer_to_lp - _fair_theta2(b, c, eps)
    return mid + dev if focal_is_proposer else mid - dev


def pair_payoff(market: MarketParams, terms: CommitmentTerms,
                focal: PairStrategy, other: PairStrategy) -> float:
    """Average payoff of ``focal`` against ``other`` in the pairwise game.

    When both players propose, each proposes (and sinks the arrangement cost)
    half of the time, so the entry is the average over the two proposer roles.
    """
    if focal.proposes and other.proposes:
        return 0.5 * (_deal_payoff(market, terms, focal, other, True)
                      + _deal_payoff(market, terms, other, focal, False))
    if focal.proposes:
        return _deal_payoff(market, terms, focal, other, True)
    if other.proposes:
        return _deal_payoff(market, terms, other, focal, False)
    return base_payoff(market, focal.intent, other.intent)


def pair_payoff_matrix(market: MarketParams, terms: CommitmentTerms,
                       strategies: tuple[PairStrategy, ...] = tuple(PairStrategy)):
    """Dense payoff table [focal, other] over ``strategies``, as nested lists."""
    return [[pair_payoff(market, terms, s, t) for t in strategies] for s in strategies]


@dataclass(frozen=True)
class GroupParams:
    """An N-player market: group size and the demand ``demand_high`` for H.

    ``demand_high`` (1..N) is the largest number of H adopters the market
    absorbs without triggering competition among them; the group optimum is
    attained with exactly that many H adopters.
    """

    market: MarketParams
    group_size: int
    demand_high: int

    def __post_init__(self) -> None:
        if self.group_size < 2:
            raise ValueError("group_size must be at least 2")
        if not 1 <= self.demand_high <= self.group_size:
            raise ValueError("demand_high must lie in 1..group_size")

    @property
    def optimal_payoff(self) -> float:
        """Per-member payoff when exactly demand_high members adopt H."""
        m, n = self.demand_high, self.group_size
        return (m * self.market.high_net + (n - m) * self.market.low_net) / n


def optimal_group_payoff(group: GroupParams) -> float:
    """Per-member payoff of the optimal technology mix."""
    return group.optimal_payoff


def benefit_fraction(group: GroupParams, role: Action, h_count: int) -> float:
    """Fraction of the benefit kept by a ``role`` adopter given ``h_count`` H adopters.

    H adopters keep everything while h_count <= demand_high and compete for
    alpha * demand_high shares beyond that; L adopters mirror this below
    demand_high.  A focal H adopter requires h_count >= 1, a focal L adopter
    h_count <= group_size - 1.
    """
    n, mu = group.group_size, group.demand_high
    if not 0 <= h_count <= n:
        raise ValueError(f"h_count must lie in 0..{n}, got {h_count}")
    alpha = group.market.alpha
    if role is Action.H:
        if h_count < 1:
            raise ValueError("an H adopter implies h_count >= 1")
        return 1.0 if h_count <= mu else alpha * mu / h_count
    if h_count > n - 1:
        raise ValueError("an L adopter implies h_count <= group_size - 1")
    return 1.0 if h_count >= mu else alpha * (n - mu) / (n - h_count)


def role_payoff(group: GroupParams, role: Action, h_count: int) -> float:
    """Expected payoff of one ``role`` adopter in a group with ``h_count`` H adopters."""
    m = group.market
    if role is Action.H:
        return benefit_fraction(group, role, h_count) * m.benefit_high - m.cost_high
    return benefit_fraction(group, role, h_count) * m.benefit_low - m.cost_low


def group_payoff(group: GroupParams, terms: CommitmentTerms,
                 focal: GroupStrategy, other: GroupStrategy, k: int) -> float:
    """Payoff of ``focal`` in a group of k focal-type and N-k other-type members.

    Only two strategies may coexist in a group.  If at least one proposer is
    present and nobody refuses, the whole group plays the optimal arrangement:
    every member earns the optimal mix payoff and the proposers split the
    arrangement cost evenly.  If a refuser is present the deal is off, no cost
    is sunk, proposers fall back to H, everyone else plays its intent, and
    payoffs follow from the realized number of H adopters.
    """
    n = group.group_size
    if not 1 <= k <= n:
        raise ValueError(f"k must lie in 1..{n}, got {k}")
    members = ((focal, k), (other, n - k))
    n_proposers = sum(c for s, c in members if s.proposes)
    refused = any(c > 0 and not s.accepts for s, c in members)
    if n_proposers > 0 and not refused:
        shared = terms.arrange_cost / n_proposers
        return group.optimal_payoff - (shared if focal.proposes else 0.0)

    def realized(strategy: GroupStrategy) -> Action:
        if strategy.proposes:
            return Action.H
        return strategy.intent

    h_count = sum(c for s, c in members if realized(s) is Action.H)
    return role_payoff(group, realized(focal), h_count)
