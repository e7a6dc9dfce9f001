"""Finite-population imitation dynamics in the small-mutation limit.

A population of Z individuals evolves by pairwise comparison: a focal player
imitates a random model with probability given by the Fermi function of their
fitness difference, where fitness is the expected game payoff against the
current population.  With rare mutations at most two strategies coexist, so
the long-run behaviour reduces to a Markov chain over monomorphic states
whose transition rates are single-mutant fixation probabilities.

Payoffs enter through an evaluator: either a pairwise table ``payoff(i, j)``
or an N-player function ``payoff(focal, other, k)`` giving the focal payoff
in a group with k focal-type members.  Everything is closed-form; the
Monte Carlo estimator exists purely as a validation oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

PairPayoff = Callable[[object, object], float]
GroupPayoff = Callable[[object, object, int], float]


class DegenerateChainError(RuntimeError):
    """The monomorphic chain has no unique stationary distribution."""


@dataclass(frozen=True)
class EvolutionSetup:
    """Population, selection intensity, strategy set and payoff evaluator.

    Exactly one of ``pair_payoff`` (per-interaction table) or ``group_payoff``
    (N-player per-composition payoffs, together with ``group_size``) must be
    supplied.
    """

    pop_size: int
    selection_strength: float
    strategies: tuple
    pair_payoff: PairPayoff | None = None
    group_payoff: GroupPayoff | None = None
    group_size: int | None = None

    def __post_init__(self) -> None:
        if self.pop_size < 2:
            raise ValueError("pop_size must be at least 2")
        if self.selection_strength < 0:
            raise ValueError("selection_strength must be nonnegative")
        if len(self.strategies) < 2:
            raise ValueError("need at least two strategies")
        if (self.pair_payoff is None) == (self.group_payoff is None):
            raise ValueError("supply exactly one of pair_payoff / group_payoff")
        if self.group_payoff is not None:
            if self.group_size is None or self.group_size < 2:
                raise ValueError("group games need group_size >= 2")
            if self.group_size > self.pop_size:
                raise ValueError("group_size cannot exceed pop_size")

    @classmethod
    def pairwise(cls, strategies: Sequence, payoff: PairPayoff,
                 pop_size: int, selection_strength: float) -> "EvolutionSetup":
        return cls(pop_size, selection_strength, tuple(strategies), pair_payoff=payoff)

    @classmethod
    def group(cls, strategies: Sequence, payoff: GroupPayoff, group_size: int,
              pop_size: int, selection_strength: float) -> "EvolutionSetup":
        return cls(pop_size, selection_strength, tuple(strategies),
                   group_payoff=payoff, group_size=group_size)


def hypergeom_pmf(draws: int, successes: int, total: int) -> np.ndarray:
    """P[k] = C(s, k) C(t-s, d-k) / C(t, d) for k = 0..draws.

    Built by incremental ratio updates in double precision; impossible counts
    get weight zero.
    """
    if not (0 <= draws <= total and 0 <= successes <= total):
        raise ValueError("need 0 <= draws, successes <= total")
    pmf = np.zeros(draws + 1)
    k_lo = max(0, draws - (total - successes))
    k_hi = min(draws, successes)
    if k_lo > k_hi:
        return pmf
    p = float(math.comb(draws, k_lo))
    for i in range(k_lo):
        p *= successes - i
    for j in range(draws - k_lo):
        p *= total - successes - j
    for m in range(draws):
        p /= total - m
    pmf[k_lo] = p
    for k in range(k_lo, k_hi):
        p *= (successes - k) * (draws - k)
        p /= (k + 1) * (total - successes - draws + k + 1)
        pmf[k + 1] = p
    return pmf


@lru_cache(maxsize=None)
def _coplayer_weights(pop_size: int, group_size: int) -> np.ndarray:
    """Row s: distribution of same-type co-players when s of the other Z-1 match."""
    w = np.empty((pop_size, group_size))
    for s in range(pop_size):
        w[s] = hypergeom_pmf(group_size - 1, s, pop_size - 1)
    w.setflags(write=False)
    return w


def _payoff_profiles(setup: EvolutionSetup, i, j) -> tuple[np.ndarray, np.ndarray]:
    """Expected payoffs (Pi_i, Pi_j) for every mixed state x = 1..Z-1."""
    z = setup.pop_size
    x = np.arange(1, z)
    if setup.pair_payoff is not None:
        pay = setup.pair_payoff
        pi_i = ((x - 1) * pay(i, i) + (z - x) * pay(i, j)) / (z - 1)
        pi_j = (x * pay(j, i) + (z - x - 1) * pay(j, j)) / (z - 1)
        return pi_i, pi_j
    n = setup.group_size
    pay = setup.group_payoff
    by_i_count_i = np.array([pay(i, j, m) for m in range(1, n + 1)])
    by_i_count_j = np.array([pay(j, i, n - k) for k in range(n)])
    weights = _coplayer_weights(z, n)
    return weights[:-1] @ by_i_count_i, weights[1:] @ by_i_count_j


def pair_average_payoffs(setup: EvolutionSetup, i, j, x: int) -> tuple[float, float]:
    """Average payoffs of an i- and a j-player among x i-players and Z-x j-players.

    The i-component needs x >= 1 and the j-component x <= Z-1; a component
    whose player type is absent is returned as nan.
    """
    z = setup.pop_size
    if setup.pair_payoff is None:
        raise ValueError("setup has no pairwise payoff table")
    if not 0 <= x <= z:
        raise ValueError(f"x must lie in 0..{z}, got {x}")
    pay = setup.pair_payoff
    pi_i = ((x - 1) * pay(i, i) + (z - x) * pay(i, j)) / (z - 1) if x >= 1 else math.nan
    pi_j = (x * pay(j, i) + (z - x - 1) * pay(j, j)) / (z - 1) if x <= z - 1 else math.nan
    return pi_i, pi_j


def group_expected_payoffs(setup: EvolutionSetup, i, j, x: int) -> tuple[float, float]:
    """Hypergeometric expectation of group payoffs over random group draws."""
    z = setup.pop_size
    if setup.group_payoff is None:
        raise ValueError("setup has no group payoff function")
    if not 0 <= x <= z:
        raise ValueError(f"x must lie in 0..{z}, got {x}")
    n, pay = setup.group_size, setup.group_payoff
    pi_i = pi_j = math.nan
    if x >= 1:
        w = hypergeom_pmf(n - 1, x - 1, z - 1)
        pi_i = float(w @ [pay(i, j, k + 1) for k in range(n)])
    if x <= z - 1:
        w = hypergeom_pmf(n - 1, x, z - 1)
        pi_j = float(w @ [pay(j, i, n - k) for k in range(n)])
    return pi_i, pi_j


def expected_payoffs(setup: EvolutionSetup, i, j, x: int) -> tuple[float, float]:
    """Dispatch to the pairwise or group payoff expectation."""
    if setup.pair_payoff is not None:
        return pair_average_payoffs(setup, i, j, x)
    return group_expected_payoffs(setup, i, j, x)


def imitation_probability(selection_strength: float, fitness_a: float,
                          fitness_b: float) -> float:
    """Fermi probability that player A copies player B's strategy."""
    if selection_strength < 0:
        raise ValueError("selection_strength must be nonnegative")
    z = selection_strength * (fitness_b - fitness_a)
    if z >= 0:
        return 1.0 / (1.0 + math.exp(-z))
    e = math.exp(z)
    return e / (1.0 + e)


def fixation_probability(setup: EvolutionSetup, mutant, resident) -> float:
    """Probability that a single mutant takes over the resident population.

    Uses the standard ratio-product identity for birth-death chains; the
    products are accumulated as prefix sums of log-ratios with a running-max
    shift so that large selection strengths cannot overflow.
    """
    pi_m, pi_r = _payoff_profiles(setup, mutant, resident)
    log_ratios = setup.selection_strength * np.cumsum(pi_r - pi_m)
    shift = max(0.0, float(log_ratios.max()))
    denom = math.exp(-shift) + float(np.exp(log_ratios - shift).sum())
    rho = math.exp(-shift) / denom
    return min(1.0, max(0.0, rho))


def fixation_matrix(setup: EvolutionSetup) -> np.ndarray:
    """rho[s, t] = fixation probability of a t-mutant in an s-resident population."""
    q = len(setup.strategies)
    rho = np.zeros((q, q))
    for s in range(q):
        for t in range(q):
            if s != t:
                rho[s, t] = fixation_probability(
                    setup, setup.strategies[t], setup.strategies[s])
    return rho


def transition_matrix(rho: np.ndarray) -> np.ndarray:
    """Monomorphic-state transition matrix from the fixation probabilities.

    Row s is the current resident; each of the q-1 possible mutants is equally
    likely, so P(s -> t) = rho[s, t] / (q - 1) and the diagonal absorbs the
    rest of the probability mass.
    """
    rho = np.asarray(rho, dtype=float)
    q = rho.shape[0]
    if rho.shape != (q, q) or q < 2:
        raise ValueError("rho must be a square matrix of size >= 2")
    p = rho / (q - 1)
    np.fill_diagonal(p, 0.0)
    np.fill_diagonal(p, 1.0 - p.sum(axis=1))
    return p


def stationary_distribution(matrix: np.ndarray) -> np.ndarray:
    """The unique probability vector fixed by a row-stochastic matrix.

    Solves the linear system pi @ M = pi with one equation replaced by the
    normalisation; verified to a residual of 1e-10.
    """
    m = np.asarray(matrix, dtype=float)
    q = m.shape[0]
    a = m.T - np.eye(q)
    a[-1, :] = 1.0
    rhs = np.zeros(q)
    rhs[-1] = 1.0
    try:
        pi = np.linalg.solve(a, rhs)
    except np.linalg.LinAlgError as exc:
        raise DegenerateChainError("stationary distribution is not unique") from exc
    if pi.min() < -1e-10:
        raise DegenerateChainError("stationary solve produced negative frequencies")
    residual = float(np.abs(pi @ m - pi).max())
    if residual > 1e-10:
        raise DegenerateChainError(f"stationary residual {residual:.3e} exceeds 1e-10")
    pi = np.clip(pi, 0.0, None)
    return pi / pi.sum()


@dataclass(frozen=True)
class StationaryResult:
    """Stationary monomorphic-state frequencies and the implied welfare."""

    frequencies: np.ndarray
    welfare: float


def expected_welfare(frequencies: np.ndarray, monomorphic_payoffs: np.ndarray) -> float:
    """Stationary-weighted average of the monomorphic-population payoffs."""
    return float(np.dot(frequencies, monomorphic_payoffs))


def stationary_result(setup: EvolutionSetup,
                      monomorphic_payoffs: Sequence[float]) -> StationaryResult:
    """Full small-mutation pipeline: fixation -> chain -> stationary -> welfare."""
    freqs = stationary_distribution(transition_matrix(fixation_matrix(setup)))
    return StationaryResult(freqs, expected_welfare(freqs, np.asarray(monomorphic_payoffs)))


def _step_probabilities(setup: EvolutionSetup, mutant, resident) -> tuple[np.ndarray, np.ndarray]:
    """Per-state probabilities that the mutant count moves up / down, x = 1..Z-1."""
    z, beta = setup.pop_size, setup.selection_strength
    pi_m, pi_r = _payoff_profiles(setup, mutant, resident)
    x = np.arange(1, z)
    prefactor = (z - x) * x / z**2
    diff = beta * (pi_m - pi_r)
    up = prefactor / (1.0 + np.exp(-np.clip(diff, -700, 700)))
    down = prefactor / (1.0 + np.exp(np.clip(diff, -700, 700)))
    return up, down


def absorbing_chain_fixation(setup: EvolutionSetup, mutant, resident) -> float:
    """Fixation probability from a direct solve of the absorbing chain.

    Validation oracle: states 0..Z with absorbing ends, solved as a dense
    linear system.  Only intended for small Z.
    """
    z = setup.pop_size
    up, down = _step_probabilities(setup, mutant, resident)
    a = np.zeros((z - 1, z - 1))
    rhs = np.zeros(z - 1)
    for idx in range(z - 1):
        a[idx, idx] = up[idx] + down[idx]
        if idx > 0:
            a[idx, idx - 1] = -down[idx]
        if idx < z - 2:
            a[idx, idx + 1] = -up[idx]
    rhs[-1] = up[-1]
    f = np.linalg.solve(a, rhs)
    return float(f[0])


@dataclass(frozen=True)
class MonteCarloFixation:
    """Monte Carlo fixation estimate with its binomial standard error."""

    estimate: float
    std_error: float
    runs: int


def monte_carlo_fixation(setup: EvolutionSetup, mutant, resident,
                         runs: int, seed: int) -> MonteCarloFixation:
    """Simulate the imitation chain from a single mutant until absorption.

    Each step moves the mutant count by +1/-1 with the imitation-dynamics
    rates (the remaining mass is a self-loop).  Runs are vectorised; results
    are deterministic for a fixed seed.  Validation oracle only, keep Z small.
    """
    if runs < 1:
        raise ValueError("runs must be positive")
    z = setup.pop_size
    up = np.zeros(z + 1)
    down = np.zeros(z + 1)
    up[1:z], down[1:z] = _step_probabilities(setup, mutant, resident)
    rng = np.random.default_rng(seed)
    state = np.ones(runs, dtype=np.int64)
    fixed = 0
    while state.size:
        u = rng.random(state.size)
        p_up = up[state]
        state = state + (u < p_up) - (u >= p_up) * (u < p_up + down[state])
        fixed += int(np.count_nonzero(state == z))
        state = state[(state > 0) & (state < z)]
    p_hat = fixed / runs
    return MonteCarloFixation(p_hat, math.sqrt(p_hat * (1.0 - p_hat) / runs), runs)
