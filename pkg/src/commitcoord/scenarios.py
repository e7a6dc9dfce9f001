"""Scenario presets, parameter sweeps and CSV output.

A scenario fixes a game (pairwise or group), base parameters, and up to two
swept axes plus up to two panel axes.  Every grid point is evaluated to a
stationary distribution over monomorphic states along with the population
welfare; rows stream out in a deterministic grid order (panels outer, sweeps
inner, last axis fastest) so repeated runs produce identical bytes even when
points are evaluated in parallel.

The ``fig1`` .. ``fig10`` presets pin the parameter sets of the standard
figure layouts; ``custom`` scenarios come from JSON documents via
``load_config``.
"""

from __future__ import annotations

import functools
import itertools
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import riskdom
from .dynamics import EvolutionSetup, stationary_result
from .games import (
    Action,
    CommitmentTerms,
    GroupParams,
    GroupStrategy,
    MarketParams,
    PairStrategy,
    base_payoff,
    fair_transfers,
    group_payoff,
    pair_payoff,
    role_payoff,
)

SWEEPABLE = ("alpha", "eps", "delta", "mu", "theta1", "theta2", "beta", "benefit_high")
PRESET_IDS = tuple(f"fig{i}" for i in range(1, 11))


class ConfigError(ValueError):
    """A scenario document or configuration violates the schema."""


@dataclass(frozen=True)
class SweepAxis:
    """One swept parameter with its explicit grid values."""

    name: str
    values: tuple[float, ...]

    def __post_init__(self) -> None:
        if self.name not in SWEEPABLE:
            raise ConfigError(f"{self.name}: not a sweepable parameter "
                              f"(choose from {', '.join(SWEEPABLE)})")
        if len(self.values) < 1:
            raise ConfigError(f"{self.name}: axis needs at least one value")

    @classmethod
    def from_range(cls, name: str, lo: float, hi: float, steps: int) -> "SweepAxis":
        if steps < 1:
            raise ConfigError(f"{name}: steps must be >= 1")
        if steps == 1:
            return cls(name, (float(lo),))
        h = (hi - lo) / (steps - 1)
        return cls(name, tuple(float(lo + i * h) for i in range(steps)))


@dataclass(frozen=True)
class ScenarioConfig:
    """Full description of one reproducible experiment."""

    scenario_id: str = "custom"
    game: str = "pairwise"
    cost_high: float = 1.0
    cost_low: float = 1.0
    benefit_high: float = 6.0
    benefit_low: float = 2.0
    alpha: float = 0.5
    eps: float = 1.0
    delta: float = 6.0
    theta1: float = 0.0
    theta2: float = 0.0
    fair: bool = True
    group_size: int = 5
    mu: int = 2
    pop_size: int = 100
    beta: float = 0.1
    baseline: bool = False
    thresholds: bool = False
    sweeps: tuple[SweepAxis, ...] = ()
    panels: tuple[SweepAxis, ...] = ()

    def __post_init__(self) -> None:
        if self.game not in ("pairwise", "group"):
            raise ConfigError(f"game: expected 'pairwise' or 'group', got {self.game!r}")
        if self.pop_size < 2:
            raise ConfigError("pop_size: must be an integer >= 2")
        if self.beta < 0:
            raise ConfigError("beta: must be nonnegative")
        if len(self.sweeps) > 2:
            raise ConfigError("sweeps: at most two swept axes")
        if len(self.panels) > 2:
            raise ConfigError("panels: at most two panel axes")
        names = [ax.name for ax in self.sweeps + self.panels]
        if len(set(names)) != len(names):
            raise ConfigError("sweep/panel axes must name distinct parameters")
        for ax in self.sweeps + self.panels:
            if ax.name == "mu" and self.game != "group":
                raise ConfigError("mu: swept only in group games")
            if ax.name in ("theta1", "theta2") and self.fair:
                raise ConfigError(f"{ax.name}: sweeping transfers requires fair=false")
            if ax.name == "alpha" and not all(0 < v < 1 for v in ax.values):
                raise ConfigError("alpha: swept values must lie in (0, 1)")
            if ax.name in ("eps", "delta") and min(ax.values) < 0:
                raise ConfigError(f"{ax.name}: swept values must be nonnegative")
            if ax.name == "mu" and not all(
                    float(v).is_integer() and 1 <= v <= self.group_size for v in ax.values):
                raise ConfigError("mu: swept values must be integers in 1..group_size")
        if "alpha" not in names and not 0 < self.alpha < 1:
            raise ConfigError(f"alpha: expected a number in (0, 1), got {self.alpha}")
        if self.eps < 0 or self.delta < 0:
            raise ConfigError("eps/delta: must be nonnegative")
        if self.game == "group":
            if self.group_size < 2:
                raise ConfigError("group_size: must be an integer >= 2")
            if self.group_size > self.pop_size:
                raise ConfigError("group_size: cannot exceed pop_size")
            if "mu" not in names and not 1 <= self.mu <= self.group_size:
                raise ConfigError("mu: must lie in 1..group_size")

    @property
    def axes(self) -> tuple[SweepAxis, ...]:
        return self.panels + self.sweeps


@dataclass(frozen=True)
class ResultRow:
    """One grid point: parameters, stationary frequencies, welfare, thresholds."""

    scenario_id: str
    params: dict
    frequencies: dict
    proposer_frequency: float
    welfare_commit: float
    welfare_baseline: float | None = None
    thresholds: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        total = sum(self.frequencies.values())
        if abs(total - 1.0) > 1e-8:
            raise RuntimeError(f"frequencies sum to {total!r}, expected 1")


def _strategy_set(game: str) -> tuple:
    return tuple(PairStrategy) if game == "pairwise" else tuple(GroupStrategy)


def _pair_table_payoff(table: dict, focal, other) -> float:
    return table[focal, other]


def _group_table_payoff(table: dict, focal, other, k: int) -> float:
    return table[focal, other, k]


def _baseline_pair_payoff(market: MarketParams, focal, other) -> float:
    return base_payoff(market, focal.intent, other.intent)


def _baseline_group_payoff(group: GroupParams, focal, other, k: int) -> float:
    n = group.group_size
    h_count = k * (focal.intent is Action.H) + (n - k) * (other.intent is Action.H)
    return role_payoff(group, focal.intent, h_count)


def _baseline_welfare(market: MarketParams, group: GroupParams | None,
                      pop_size: int, beta: float) -> float:
    """Welfare of the commitment-free {HN, LN} population."""
    if group is None:
        strategies = (PairStrategy.HN, PairStrategy.LN)
        payoff = functools.partial(_baseline_pair_payoff, market)
        setup = EvolutionSetup.pairwise(strategies, payoff, pop_size, beta)
        mono = [base_payoff(market, s.intent, s.intent) for s in strategies]
    else:
        strategies = (GroupStrategy.HN, GroupStrategy.LN)
        payoff = functools.partial(_baseline_group_payoff, group)
        setup = EvolutionSetup.group(strategies, payoff, group.group_size, pop_size, beta)
        n = group.group_size
        mono = [role_payoff(group, Action.H, n), role_payoff(group, Action.L, 0)]
    return stationary_result(setup, mono).welfare


def _evaluate_point(config: ScenarioConfig, overrides: dict) -> ResultRow:
    p = {
        "alpha": config.alpha, "eps": config.eps, "delta": config.delta,
        "theta1": config.theta1, "theta2": config.theta2, "beta": config.beta,
        "benefit_high": config.benefit_high, "mu": config.mu,
    }
    p.update(overrides)
    market = MarketParams(config.cost_high, config.cost_low,
                          p["benefit_high"], config.benefit_low, p["alpha"])
    if config.fair:
        theta1, theta2 = fair_transfers(market, p["eps"])
    else:
        theta1, theta2 = p["theta1"], p["theta2"]
    terms = CommitmentTerms(p["eps"], p["delta"], theta1, theta2)
    beta = p["beta"]
    strategies = _strategy_set(config.game)
    thresholds: dict[str, float] = {}

    if config.game == "pairwise":
        table = {(s, t): pair_payoff(market, terms, s, t)
                 for s in strategies for t in strategies}
        payoff = functools.partial(_pair_table_payoff, table)
        setup = EvolutionSetup.pairwise(strategies, payoff, config.pop_size, beta)
        mono = [table[s, s] for s in strategies]
        group = None
        params = {
            "alpha": p["alpha"], "benefit_high": p["benefit_high"],
            "benefit_low": config.benefit_low, "beta": beta,
            "cost_high": config.cost_high, "cost_low": config.cost_low,
            "delta": p["delta"], "eps": p["eps"], "pop_size": config.pop_size,
            "theta1": theta1, "theta2": theta2,
        }
        if config.thresholds:
            thresholds["alpha_bound"] = riskdom.alpha_threshold(market, p["eps"], p["delta"])
    else:
        group = GroupParams(market, config.group_size, int(p["mu"]))
        n = group.group_size
        table = {(s, t, k): group_payoff(group, terms, s, t, k)
                 for s in strategies for t in strategies for k in range(1, n + 1)}
        payoff = functools.partial(_group_table_payoff, table)
        setup = EvolutionSetup.group(strategies, payoff, n, config.pop_size, beta)
        mono = [table[s, s, n] for s in strategies]
        params = {
            "alpha": p["alpha"], "benefit_high": p["benefit_high"],
            "benefit_low": config.benefit_low, "beta": beta,
            "cost_high": config.cost_high, "cost_low": config.cost_low,
            "eps": p["eps"], "group_size": n, "mu": int(p["mu"]),
            "pop_size": config.pop_size,
        }
        if config.thresholds:
            bounds = riskdom.group_epsilon_thresholds(group).epsilon_bounds
            thresholds = {f"eps_bound_{s.name.lower()}": bounds[s]
                          for s in (GroupStrategy.HC, GroupStrategy.LC,
                                    GroupStrategy.HN, GroupStrategy.LN)}

    result = stationary_result(setup, mono)
    freqs = {s.name: float(f) for s, f in zip(strategies, result.frequencies)}
    proposer = freqs["HP"] + freqs["LP"]
    welfare_base = None
    if config.baseline:
        welfare_base = _baseline_welfare(market, group, config.pop_size, beta)
    return ResultRow(config.scenario_id, params, freqs, proposer,
                     result.welfare, welfare_base, thresholds)


def grid_points(config: ScenarioConfig) -> Iterator[dict]:
    """Parameter overrides in deterministic order: panels outer, sweeps inner."""
    axes = config.axes
    if not axes:
        yield {}
        return
    for combo in itertools.product(*(ax.values for ax in axes)):
        yield {ax.name: value for ax, value in zip(axes, combo)}


def run_scenario(config: ScenarioConfig, jobs: int = 1) -> Iterator[ResultRow]:
    """Evaluate every grid point, streaming rows in grid order.

    ``jobs > 1`` evaluates points in a process pool; order-preserving map
    keeps the output bytes identical to a serial run.
    """
    points = list(grid_points(config))
    worker = functools.partial(_evaluate_point, config)
    if jobs > 1:
        chunk = max(1, len(points) // (8 * jobs))
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            yield from pool.map(worker, points, chunksize=chunk)
    else:
        for point in points:
            yield worker(point)


PAIR_PARAM_COLUMNS = ("alpha", "benefit_high", "benefit_low", "beta", "cost_high",
                      "cost_low", "delta", "eps", "pop_size", "theta1", "theta2")
GROUP_PARAM_COLUMNS = ("alpha", "benefit_high", "benefit_low", "beta", "cost_high",
                       "cost_low", "eps", "group_size", "mu", "pop_size")
GROUP_THRESHOLD_COLUMNS = ("eps_bound_hc", "eps_bound_lc", "eps_bound_hn", "eps_bound_ln")


def csv_columns(config: ScenarioConfig) -> list[str]:
    """Column schema for a scenario, in emission order."""
    cols = ["scenario_id"]
    cols += PAIR_PARAM_COLUMNS if config.game == "pairwise" else GROUP_PARAM_COLUMNS
    cols += [f"freq_{s.name}" for s in _strategy_set(config.game)]
    cols.append("freq_proposers")
    cols.append("welfare_commit")
    if config.baseline:
        cols.append("welfare_baseline")
    if config.thresholds:
        cols += ["alpha_bound"] if config.game == "pairwise" else list(GROUP_THRESHOLD_COLUMNS)
    return cols


def _format_value(value) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return format(float(value), ".10g")


def _row_values(row: ResultRow, columns: Sequence[str]) -> list:
    merged = {"scenario_id": row.scenario_id, **row.params,
              **{f"freq_{k}": v for k, v in row.frequencies.items()},
              "freq_proposers": row.proposer_frequency,
              "welfare_commit": row.welfare_commit,
              **row.thresholds}
    if row.welfare_baseline is not None:
        merged["welfare_baseline"] = row.welfare_baseline
    return [merged[c] for c in columns]


def emit_csv(config: ScenarioConfig, rows: Iterable[ResultRow], destination) -> None:
    """Write rows as CSV (header first, floats at 10 significant digits).

    ``destination`` is a path or an open text stream.  Output bytes are a pure
    function of the config and rows.
    """
    columns = csv_columns(config)

    def _write(handle) -> None:
        handle.write(",".join(columns) + "\n")
        for row in rows:
            handle.write(",".join(_format_value(v) for v in _row_values(row, columns)) + "\n")

    if hasattr(destination, "write"):
        _write(destination)
        return
    try:
        with open(destination, "w", encoding="ascii", newline="") as handle:
            _write(handle)
    except OSError as exc:
        raise OSError(f"cannot write CSV to {destination}: {exc}") from exc


def _alpha_axis() -> SweepAxis:
    return SweepAxis.from_range("alpha", 0.05, 0.95, 19)


def _presets() -> dict[str, ScenarioConfig]:
    eps_levels = SweepAxis("eps", (0.1, 1.0, 2.0))
    beta_levels = SweepAxis("beta", (0.01, 0.1, 1.0))
    high_benefits = SweepAxis("benefit_high", (6.0, 3.0))
    return {
        "fig1": ScenarioConfig(
            scenario_id="fig1", game="pairwise", delta=6.0, thresholds=True,
            sweeps=(_alpha_axis(),), panels=(eps_levels, beta_levels)),
        "fig2": ScenarioConfig(
            scenario_id="fig2", game="pairwise",
            sweeps=(SweepAxis.from_range("eps", 0.0, 3.0, 41),
                    SweepAxis.from_range("delta", 0.0, 8.0, 41)),
            panels=(SweepAxis("alpha", (0.3, 0.5, 0.7)), beta_levels)),
        "fig3": ScenarioConfig(
            scenario_id="fig3", game="pairwise", delta=6.0, baseline=True,
            sweeps=(eps_levels, _alpha_axis()), panels=(high_benefits, beta_levels)),
        "fig4": ScenarioConfig(
            scenario_id="fig4", game="group", group_size=5, alpha=0.5, beta=0.1,
            sweeps=(SweepAxis.from_range("eps", 0.05, 3.0, 25),),
            panels=(high_benefits, SweepAxis("mu", (1, 2, 5)))),
        "fig5": ScenarioConfig(
            scenario_id="fig5", game="group", group_size=5, mu=2, beta=0.1,
            sweeps=(_alpha_axis(),), panels=(high_benefits, eps_levels)),
        "fig6": ScenarioConfig(
            scenario_id="fig6", game="group", group_size=5, alpha=0.5, beta=0.1,
            sweeps=(SweepAxis.from_range("eps", 0.1, 2.0, 20),
                    SweepAxis("mu", (1, 2, 3, 4, 5))),
            panels=(high_benefits,)),
        "fig7": ScenarioConfig(
            scenario_id="fig7", game="group", group_size=5, alpha=0.5, baseline=True,
            sweeps=(eps_levels, SweepAxis("mu", (1, 2, 3, 4, 5))),
            panels=(high_benefits, beta_levels)),
        "fig8": ScenarioConfig(
            scenario_id="fig8", game="pairwise", eps=1.0, delta=4.0, fair=False,
            sweeps=(SweepAxis.from_range("theta1", 0.0, 4.0, 41),
                    SweepAxis.from_range("theta2", 0.0, 4.0, 41)),
            panels=(SweepAxis("alpha", (0.1, 0.3, 0.8)), beta_levels)),
        "fig9": ScenarioConfig(
            scenario_id="fig9", game="group", group_size=5, mu=2, alpha=0.5,
            beta=0.1, thresholds=True,
            sweeps=(SweepAxis.from_range("eps", 0.05, 2.0, 40),)),
        "fig10": ScenarioConfig(
            scenario_id="fig10", game="group", group_size=5, mu=2,
            sweeps=(_alpha_axis(),), panels=(eps_levels, beta_levels)),
    }


PRESETS = _presets()

_SCALAR_KEYS = {
    "game": str, "cost_high": float, "cost_low": float, "benefit_high": float,
    "benefit_low": float, "alpha": float, "eps": float, "delta": float,
    "theta1": float, "theta2": float, "fair": bool, "group_size": int,
    "mu": int, "pop_size": int, "beta": float, "baseline": bool, "thresholds": bool,
}


def _parse_axis(kind: str, index: int, spec) -> SweepAxis:
    where = f"{kind}[{index}]"
    if not isinstance(spec, dict):
        raise ConfigError(f"{where}: expected an object")
    unknown = set(spec) - {"name", "values", "min", "max", "steps"}
    if unknown:
        raise ConfigError(f"{where}: unknown key {sorted(unknown)[0]!r}")
    name = spec.get("name")
    if not isinstance(name, str):
        raise ConfigError(f"{where}.name: expected a string")
    if "values" in spec:
        values = spec["values"]
        if not isinstance(values, list) or not all(isinstance(v, (int, float)) for v in values):
            raise ConfigError(f"{where}.values: expected a list of numbers")
        return SweepAxis(name, tuple(float(v) for v in values))
    missing = [k for k in ("min", "max", "steps") if k not in spec]
    if missing:
        raise ConfigError(f"{where}: needs 'values' or 'min'/'max'/'steps' "
                          f"(missing {missing[0]!r})")
    if not isinstance(spec["steps"], int):
        raise ConfigError(f"{where}.steps: expected an integer")
    return SweepAxis.from_range(name, float(spec["min"]), float(spec["max"]), spec["steps"])


def parse_config(document: dict) -> ScenarioConfig:
    """Build a ScenarioConfig from a decoded JSON document, rejecting unknown keys."""
    if not isinstance(document, dict):
        raise ConfigError("top level: expected an object")
    scenario = document.get("scenario", "custom")
    if not isinstance(scenario, str):
        raise ConfigError("scenario: expected a string")
    if scenario in PRESET_IDS:
        extra = set(document) - {"scenario"}
        if extra:
            raise ConfigError(f"{sorted(extra)[0]}: not allowed alongside a preset scenario")
        return PRESETS[scenario]
    if scenario != "custom":
        raise ConfigError(f"scenario: expected 'custom' or one of {', '.join(PRESET_IDS)}, "
                          f"got {scenario!r}")
    unknown = set(document) - set(_SCALAR_KEYS) - {"scenario", "sweep", "panels"}
    if unknown:
        raise ConfigError(f"{sorted(unknown)[0]}: unknown key")
    kwargs: dict = {"scenario_id": "custom"}
    for key, kind in _SCALAR_KEYS.items():
        if key not in document:
            continue
        value = document[key]
        if kind is bool:
            if not isinstance(value, bool):
                raise ConfigError(f"{key}: expected a boolean")
        elif kind is int:
            if not isinstance(value, int) or isinstance(value, bool):
                raise ConfigError(f"{key}: expected an integer")
        elif kind is float:
            if not isinstance(value, (int, float)) or isinstance(value, bool):
                raise ConfigError(f"{key}: expected a number")
            value = float(value)
        kwargs[key] = value
    if kwargs.get("alpha") is not None and not 0 < kwargs["alpha"] < 1:
        raise ConfigError(f"alpha: expected a number in (0, 1), got {kwargs['alpha']}")
    sweeps = document.get("sweep", [])
    panels = document.get("panels", [])
    for kind_name, entries in (("sweep", sweeps), ("panels", panels)):
        if not isinstance(entries, list):
            raise ConfigError(f"{kind_name}: expected a list")
    kwargs["sweeps"] = tuple(_parse_axis("sweep", i, s) for i, s in enumerate(sweeps))
    kwargs["panels"] = tuple(_parse_axis("panels", i, s) for i, s in enumerate(panels))
    for ax in kwargs["sweeps"] + kwargs["panels"]:
        if ax.name in document:
            raise ConfigError(f"{ax.name}: fixed value conflicts with swept axis")
    try:
        return ScenarioConfig(**kwargs)
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def load_config(path: str | os.PathLike) -> ScenarioConfig:
    """Parse a JSON scenario document from disk."""
    try:
        with open(path, "r", encoding="utf-8") as handle:
            document = json.load(handle)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: not valid JSON ({exc})") from exc
    return parse_config(document)
