"""Command-line front end: generate, rank, estimate, experiment, list.

All numerics live in the library modules; the CLI parses flags, wires
files, and prints one headline per invocation.  Exit code 0 means the
requested artifact was fully written; argument or data errors exit 2.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

from .estimators import (
    aic_order,
    covariance_determinants,
    covdet_order,
    hokalman_order,
    write_aic_csv,
    write_covdet_csv,
    write_sweep_csv,
)
from .experiments import ExperimentSpec, list_experiments, run_experiment
from .hankel import build_hankel
from .rank import RankPolicy, default_policy, numerical_rank, singular_values
from .signals import (
    Mode,
    ModeSum,
    gen_high_order,
    gen_mode_sum,
    gen_nonhomogeneous,
    gen_y5,
    read_signal_csv,
    write_pair_csv,
    write_signal_csv,
)

GENERATE_FAMILIES = ("mode_sum", "y5", "high_order", "nonhomogeneous")
ESTIMATE_METHODS = ("hokalman", "aic", "covdet")


@dataclass(frozen=True)
class CliConfig:
    seed: int | None
    policy: RankPolicy | None
    out: Path | None
    verbose: bool


def _build_policy(name: str | None, tol: float | None) -> RankPolicy | None:
    if name is None:
        return None
    if name == "relative":
        return RankPolicy.relative(tol if tol is not None else 1e-10)
    if name == "absolute":
        if tol is None:
            raise ValueError("--policy absolute requires --tol")
        return RankPolicy.absolute(tol)
    if name == "gap":
        return RankPolicy.gap(tol) if tol is not None else RankPolicy.gap()
    raise ValueError(f"unknown policy {name!r}")


def _parse_mode(text: str) -> Mode:
    parts = [float(x) for x in text.split(",")]
    if len(parts) not in (2, 3):
        raise argparse.ArgumentTypeError("mode must be 'coeff,decay[,freq]'")
    return Mode(*parts)


def _parse_m_range(text: str) -> range:
    lo, _, hi = text.partition(":")
    return range(int(lo), int(hi) + 1)


def _parse_override(token: str):
    for cast in (int, float):
        try:
            return cast(token)
        except ValueError:
            continue
    return token


def _experiment_epilog() -> str:
    lines = ["registered experiments:"]
    for name, description, _ in list_experiments():
        lines.append(f"  {name}: {description}")
    return "\n".join(lines)


def _add_common(parser: argparse.ArgumentParser, suppress: bool) -> None:
    # Global flags are accepted both before and after the subcommand; the
    # subparser copies use SUPPRESS so they never clobber earlier values.
    d = argparse.SUPPRESS if suppress else None
    parser.add_argument("--seed", type=int, default=d, help="seed for seeded operations")
    parser.add_argument("--policy", choices=("relative", "absolute", "gap"), default=d,
                        help="rank tolerance policy (default: relative max(shape)*eps)")
    parser.add_argument("--tol", type=float, default=d, help="policy value (threshold or min ratio)")
    parser.add_argument("--out", type=Path, default=d, help="output CSV path")
    if suppress:
        parser.add_argument("-v", "--verbose", action="store_true", default=argparse.SUPPRESS)
    else:
        parser.add_argument("-v", "--verbose", action="store_true")


def _make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hankelorder",
        description="Model-order estimation via Hankel-matrix rank analysis.",
        epilog=_experiment_epilog(),
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    _add_common(parser, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _add_common(common, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("generate", help="synthesize a response family to CSV", parents=[common])
    p_gen.add_argument("family", choices=GENERATE_FAMILIES)
    p_gen.add_argument("--count", type=int, default=40)
    p_gen.add_argument("--sample-period", type=float, default=1.0)
    p_gen.add_argument("--mode", type=_parse_mode, action="append", default=None,
                       help="mode_sum term 'coeff,decay[,freq]' (repeatable)")
    p_gen.add_argument("--f0", choices=("sinusoid", "exponential"), default="exponential")
    p_gen.add_argument("--n0", type=int, default=50)
    p_gen.add_argument("--m", type=int, default=1)

    p_rank = sub.add_parser("rank", help="rank sweep (or single-n rank) of a signal CSV", parents=[common])
    p_rank.add_argument("input", type=Path)
    group = p_rank.add_mutually_exclusive_group()
    group.add_argument("--n", type=int, default=None, help="rank of the single n x n matrix")
    group.add_argument("--n-max", type=int, default=8, help="sweep n = 2..n_max")

    p_est = sub.add_parser("estimate", help="order estimation report for a signal CSV", parents=[common])
    p_est.add_argument("input", type=Path)
    p_est.add_argument("--method", choices=ESTIMATE_METHODS, required=True)
    p_est.add_argument("--n-max", type=int, default=8)
    p_est.add_argument("--p-max", type=int, default=10)
    p_est.add_argument("--m-range", type=_parse_m_range, default=range(2, 9),
                       help="covdet orders as lo:hi (inclusive)")

    p_exp = sub.add_parser(
        "experiment",
        help="run a registered experiment (extra --key value pairs override parameters)",
        epilog=_experiment_epilog(),
        formatter_class=argparse.RawDescriptionHelpFormatter,
        parents=[common],
    )
    p_exp.add_argument("name")

    sub.add_parser("list", help="list registered experiments", parents=[common])
    return parser


def _cmd_generate(args, config: CliConfig) -> int:
    family = args.family
    out = config.out or Path(f"{family}.csv")
    if family == "y5":
        sig = gen_y5(args.count)
        write_signal_csv(sig, out)
    elif family == "mode_sum":
        modes = args.mode or [Mode(1.0, 0.5)]
        sig = gen_mode_sum(ModeSum(modes), args.count, args.sample_period)
        write_signal_csv(sig, out)
    elif family == "high_order":
        sig = gen_high_order(args.f0, args.n0, args.count, args.m, sample_period=args.sample_period)
        write_signal_csv(sig, out)
    else:  # nonhomogeneous
        y, u = gen_nonhomogeneous(args.count, args.sample_period)
        write_pair_csv(y, u, out)
    print(f"wrote {out}")
    return 0


def _cmd_rank(args, config: CliConfig) -> int:
    signal = read_signal_csv(args.input)
    out = config.out or Path("rank_sweep.csv")
    if args.n is not None:
        mat = build_hankel(signal, args.n)
        spectrum = singular_values(mat.entries)
        policy = config.policy or default_policy(mat.shape)
        result = numerical_rank(spectrum, policy)
        out.write_text(
            "n,rank,gap,condition\n"
            f"{args.n},{result.rank},{result.decision_gap:.17g},"
            f"{(spectrum.values[0] / spectrum.values[-1] if spectrum.values[-1] else float('inf')):.17g}\n",
            encoding="utf-8",
        )
        print(f"order={result.rank}")
        return 0
    estimate, sweep = hokalman_order(signal, args.n_max, config.policy)
    write_sweep_csv(sweep, out)
    print(f"order={estimate.order if estimate.conclusive else 'inconclusive'}")
    return 0


def _cmd_estimate(args, config: CliConfig) -> int:
    signal = read_signal_csv(args.input)
    out = config.out or Path(f"{args.method}.csv")
    if args.method == "hokalman":
        estimate, sweep = hokalman_order(signal, args.n_max, config.policy)
        write_sweep_csv(sweep, out)
    elif args.method == "aic":
        estimate, report = aic_order(signal, args.p_max)
        write_aic_csv(report, out)
    else:
        report = covariance_determinants(signal, args.m_range)
        estimate = covdet_order(report)
        write_covdet_csv(report, out)
    print(f"order={estimate.order if estimate.conclusive else 'inconclusive'}")
    return 0


def _cmd_experiment(args, config: CliConfig, extras: list[str]) -> int:
    overrides: dict = {}
    i = 0
    while i < len(extras):
        token = extras[i]
        if not token.startswith("--") or i + 1 >= len(extras):
            raise ValueError(f"cannot parse experiment override {token!r}; use --key value")
        overrides[token[2:].replace("-", "_")] = _parse_override(extras[i + 1])
        i += 2
    spec = ExperimentSpec(args.name, overrides, config.seed)
    out = config.out or Path(f"{args.name}.csv")
    summary = run_experiment(spec, out)
    print(summary.line())
    return 0


def _cmd_list() -> int:
    for name, description, defaults in list_experiments():
        pretty = ", ".join(f"{k}={v}" for k, v in sorted(defaults.items()))
        print(f"{name}: {description} [defaults: {pretty}]")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = _make_parser()
    if argv is None:
        argv = sys.argv[1:]
    args, extras = parser.parse_known_args(argv)
    if extras and args.command != "experiment":
        parser.error(f"unrecognized arguments: {' '.join(extras)}")
    try:
        config = CliConfig(
            seed=args.seed,
            policy=_build_policy(args.policy, args.tol),
            out=args.out,
            verbose=args.verbose,
        )
        if args.command == "generate":
            return _cmd_generate(args, config)
        if args.command == "rank":
            return _cmd_rank(args, config)
        if args.command == "estimate":
            return _cmd_estimate(args, config)
        if args.command == "experiment":
            return _cmd_experiment(args, config, extras)
        if args.command == "list":
            return _cmd_list()
        parser.error(f"unknown command {args.command!r}")
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
