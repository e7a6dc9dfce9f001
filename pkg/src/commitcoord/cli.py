"""Command-line interface: analyze, stationary, fig, sweep, validate."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import scenarios, validation
from .games import CommitmentTerms, GroupParams, MarketParams, fair_transfers
from .riskdom import group_epsilon_thresholds, pair_thresholds
from .scenarios import ConfigError, PRESETS, ScenarioConfig, SweepAxis


def _add_market_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--alpha", type=float, default=0.5,
                        help="market competitiveness in (0,1)")
    parser.add_argument("--cost-high", type=float, default=1.0)
    parser.add_argument("--cost-low", type=float, default=1.0)
    parser.add_argument("--benefit-high", type=float, default=6.0)
    parser.add_argument("--benefit-low", type=float, default=2.0)


def _add_commitment_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--eps", type=float, default=1.0, help="arrangement cost")
    parser.add_argument("--delta", type=float, default=6.0, help="dishonour compensation")
    parser.add_argument("--theta1", type=float, default=None,
                        help="transfer paid by an H-proposer (default: fair)")
    parser.add_argument("--theta2", type=float, default=None,
                        help="transfer claimed by an L-proposer (default: fair)")
    parser.add_argument("--fair", action="store_true",
                        help="derive transfers from the fair split of the surplus")


def _add_group_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--group-size", type=int, default=5)
    parser.add_argument("--mu", type=int, default=2,
                        help="market demand for the high technology")


def _market(args: argparse.Namespace) -> MarketParams:
    return MarketParams(args.cost_high, args.cost_low,
                        args.benefit_high, args.benefit_low, args.alpha)


def _terms(args: argparse.Namespace, market: MarketParams) -> tuple[CommitmentTerms, bool]:
    fair = args.fair or (args.theta1 is None and args.theta2 is None)
    if fair:
        theta1, theta2 = fair_transfers(market, args.eps)
    else:
        theta1 = args.theta1 if args.theta1 is not None else 0.0
        theta2 = args.theta2 if args.theta2 is not None else 0.0
    return CommitmentTerms(args.eps, args.delta, theta1, theta2), fair


def _cmd_analyze(args: argparse.Namespace) -> int:
    market = _market(args)
    if args.game == "pair":
        terms, fair = _terms(args, market)
        report = pair_thresholds(market, terms, fair=fair)
        payload = {
            "game": "pairwise",
            "epsilon_bounds_hp": {s.name: v for s, v in report.epsilon_bounds_hp.items()},
            "epsilon_bounds_lp": {s.name: v for s, v in report.epsilon_bounds_lp.items()},
            "epsilon_bound": report.epsilon_bound,
            "binding_opponent": report.binding_opponent.name,
            "theta1_upper": report.theta1_upper,
            "theta2_lower": report.theta2_lower,
            "delta_lower": report.delta_lower,
            "alpha_upper": report.alpha_upper,
        }
        if args.json:
            print(json.dumps(payload, indent=2))
            return 0
        print(f"pairwise viability bounds (eps={args.eps:g}, delta={args.delta:g}, "
              f"fair={fair})")
        for label, bounds in (("HP", report.epsilon_bounds_hp),
                              ("LP", report.epsilon_bounds_lp)):
            pretty = ", ".join(f"{s.name}: {v:.6g}" for s, v in bounds.items())
            print(f"  eps ceilings for {label}:  {pretty}")
        print(f"  overall eps bound: {report.epsilon_bound:.6g} "
              f"(binding opponent {report.binding_opponent.name})")
        print(f"  theta1 < {report.theta1_upper:.6g}   theta2 > {report.theta2_lower:.6g}   "
              f"delta > {report.delta_lower:.6g}")
        print(f"  alpha bound (fair agreements): {report.alpha_upper:.6g}")
        return 0
    group = GroupParams(market, args.group_size, args.mu)
    report = group_epsilon_thresholds(group)
    payload = {
        "game": "group",
        "epsilon_bounds": {s.name: v for s, v in report.epsilon_bounds.items()},
        "epsilon_bound": report.epsilon_bound,
        "binding_opponent": report.binding_opponent.name,
        "harmonic": report.harmonic,
    }
    if args.json:
        print(json.dumps(payload, indent=2))
        return 0
    print(f"group viability bounds (N={args.group_size}, mu={args.mu}, "
          f"alpha={args.alpha:g})")
    pretty = ", ".join(f"{s.name}: {v:.6g}" for s, v in report.epsilon_bounds.items())
    print(f"  eps ceilings:  {pretty}")
    print(f"  overall eps bound: {report.epsilon_bound:.6g} "
          f"(binding opponent {report.binding_opponent.name})")
    print(f"  harmonic number H_N: {report.harmonic:.6g}")
    return 0


def _cmd_stationary(args: argparse.Namespace) -> int:
    fair = args.fair or (args.theta1 is None and args.theta2 is None)
    config = ScenarioConfig(
        scenario_id="custom", game="pairwise" if args.game == "pair" else "group",
        cost_high=args.cost_high, cost_low=args.cost_low,
        benefit_high=args.benefit_high, benefit_low=args.benefit_low,
        alpha=args.alpha, eps=args.eps, delta=args.delta,
        theta1=args.theta1 if args.theta1 is not None else 0.0,
        theta2=args.theta2 if args.theta2 is not None else 0.0,
        fair=fair, group_size=args.group_size, mu=args.mu,
        pop_size=args.pop_size, beta=args.beta, baseline=args.baseline)
    row = scenarios._evaluate_point(config, {})
    if args.json:
        payload = {"frequencies": row.frequencies,
                   "freq_proposers": row.proposer_frequency,
                   "welfare_commit": row.welfare_commit}
        if row.welfare_baseline is not None:
            payload["welfare_baseline"] = row.welfare_baseline
        print(json.dumps(payload, indent=2))
        return 0
    print(f"stationary frequencies (Z={args.pop_size}, beta={args.beta:g}):")
    for name, freq in row.frequencies.items():
        print(f"  {name}: {freq:.6f}")
    print(f"  proposers (HP+LP): {row.proposer_frequency:.6f}")
    print(f"  welfare: {row.welfare_commit:.6f}")
    if row.welfare_baseline is not None:
        print(f"  welfare without commitment: {row.welfare_baseline:.6f}")
    return 0


def _write_scenario(config: ScenarioConfig, out_dir: str, jobs: int) -> Path:
    path = Path(out_dir)
    path.mkdir(parents=True, exist_ok=True)
    target = path / f"{config.scenario_id}.csv"
    rows = scenarios.run_scenario(config, jobs=jobs)
    scenarios.emit_csv(config, rows, target)
    return target


def _cmd_fig(args: argparse.Namespace) -> int:
    if args.id not in PRESETS:
        print(f"unknown figure id {args.id!r}; choose from {', '.join(PRESETS)}",
              file=sys.stderr)
        return 2
    target = _write_scenario(PRESETS[args.id], args.out, args.jobs)
    print(f"wrote {target}")
    return 0


def _cmd_sweep(args: argparse.Namespace) -> int:
    try:
        config = scenarios.load_config(args.config)
    except (ConfigError, OSError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    target = _write_scenario(config, args.out, args.jobs)
    print(f"wrote {target}")
    return 0


def _cmd_validate(args: argparse.Namespace) -> int:
    results = validation.run_validation(quick=args.quick, seed=args.seed)
    failed = [r.name for r in results if not r.passed]
    for result in results:
        status = "PASS" if result.passed else "FAIL"
        print(f"{status} {result.name}: {result.detail}")
    if failed:
        print(f"failed checks: {', '.join(failed)}", file=sys.stderr)
        return 1
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="commitcoord",
        description="Commitment-based coordination games: analytic thresholds, "
                    "stationary strategy frequencies, and figure-level sweeps.")
    sub = parser.add_subparsers(dest="command", required=True)

    analyze = sub.add_parser("analyze", help="print viability thresholds")
    analyze.add_argument("--game", choices=("pair", "group"), default="pair")
    _add_market_flags(analyze)
    _add_commitment_flags(analyze)
    _add_group_flags(analyze)
    analyze.add_argument("--json", action="store_true", help="machine-readable output")
    analyze.set_defaults(func=_cmd_analyze)

    stationary = sub.add_parser("stationary",
                                help="single-point stationary frequencies and welfare")
    stationary.add_argument("--game", choices=("pair", "group"), default="pair")
    _add_market_flags(stationary)
    _add_commitment_flags(stationary)
    _add_group_flags(stationary)
    stationary.add_argument("--pop-size", type=int, default=100)
    stationary.add_argument("--beta", type=float, default=0.1)
    stationary.add_argument("--baseline", action="store_true",
                            help="also report the commitment-free welfare")
    stationary.add_argument("--json", action="store_true")
    stationary.set_defaults(func=_cmd_stationary)

    fig = sub.add_parser("fig", help="run a figure preset and write its CSV")
    fig.add_argument("id", help="figure id, fig1..fig10")
    fig.add_argument("--out", required=True, help="output directory")
    fig.add_argument("--jobs", type=int, default=1)
    fig.set_defaults(func=_cmd_fig)

    sweep = sub.add_parser("sweep", help="run a scenario from a JSON config")
    sweep.add_argument("--config", required=True)
    sweep.add_argument("--out", required=True)
    sweep.add_argument("--jobs", type=int, default=1)
    sweep.set_defaults(func=_cmd_sweep)

    validate = sub.add_parser("validate", help="run the oracle/property battery")
    validate.add_argument("--quick", action="store_true",
                          help="fewer Monte Carlo runs")
    validate.add_argument("--seed", type=int, default=20240,
                          help="seed for the Monte Carlo oracle")
    validate.set_defaults(func=_cmd_validate)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
