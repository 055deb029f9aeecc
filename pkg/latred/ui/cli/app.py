"""Command-line interface for latred.

Subcommands:
    reduce       Reduce a basis with one of the reduction variants
    check        Check a basis against a reducedness notion
    bench        Mean iteration and flop counts against their bounds
    ber          Bit error rate campaign from a JSON configuration
    compare      Wall time and quality of several variants on shared bases
    init-config  Write the default configuration file

Exit codes: 0 success, 1 check failed, 2 invalid input or configuration,
3 singular basis, 4 iteration cap exceeded.
"""

import argparse
import json
import logging
import sys
from collections.abc import Callable, Sequence
from pathlib import Path
from typing import TextIO

from latred.app.bootstrap import load_configuration, setup_logging
from latred.core.domain import (
    ReducednessNotion,
    ReductionParams,
    ReductionVariant,
    SortMode,
)
from latred.core.errors import (
    IterationCapExceededError,
    LatticeError,
    NotPositiveDefiniteError,
    SingularBasisError,
)
from latred.core.realify import realify_local
from latred.core.reduction import check_lll_conditions
from latred.core.services.benchmark import (
    BENCH_COLUMNS,
    COMPARE_COLUMNS,
    run_bench,
    run_compare,
)
from latred.core.services.reducer import LatticeReducer
from latred.infrastructure.config import AppConfig, ConfigManager, ConfigurationError
from latred.infrastructure.persistence import MatrixRepository, csv_text, write_report
from latred.infrastructure.persistence.result_writer import (
    BER_COLUMNS,
    ber_rows,
    load_ber_config,
    write_text,
)
from latred.mimo.ber import run_ber

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INVALID = 2
EXIT_SINGULAR = 3
EXIT_CAP = 4

VARIANT_CHOICES = [v.value for v in ReductionVariant]
SORT_MODE_CHOICES = [m.value for m in SortMode]
SEED_HELP = "Random seed (defaults to simulation.seed)"


def _int_list(text: str) -> list[int]:
    try:
        values = [int(part) for part in text.split(",") if part.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers: {text}") from e
    if not values:
        raise argparse.ArgumentTypeError("expected at least one value")
    return values


def _variant_list(text: str) -> list[ReductionVariant]:
    try:
        return [ReductionVariant(part.strip()) for part in text.split(",") if part.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(
            f"variants must be among {', '.join(VARIANT_CHOICES)}"
        ) from e


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="latred",
        description="Complex lattice reduction toolkit",
        epilog="Matrices are JSON documents {n, cols: [[{re, im}, ...], ...]}",
    )
    parser.add_argument("--config", type=str, default=None, help="TOML configuration file")
    parser.add_argument(
        "--log-level",
        choices=["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"],
        default=None,
        help="Override the configured logging level",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    reduce_p = sub.add_parser("reduce", help="Reduce a basis")
    reduce_p.add_argument("input", type=Path, help="Matrix JSON file")
    reduce_p.add_argument("--variant", choices=VARIANT_CHOICES, default=None)
    reduce_p.add_argument("--delta", type=float, default=None)
    reduce_p.add_argument(
        "--budget", type=int, default=None, help="Super-iterations of parallel variants"
    )
    reduce_p.add_argument(
        "--finalize", action="store_true", help="Full size reduction after effective runs"
    )
    reduce_p.add_argument(
        "--sort-mode",
        choices=SORT_MODE_CHOICES,
        default=None,
        help="Sorting step of parallel LLL-deep (defaults to parallel.sort_mode)",
    )
    reduce_p.add_argument("--dual", action="store_true", help="Reduce the dual basis")
    reduce_p.add_argument("--output", "-o", type=Path, default=None, help="Reduced basis")
    reduce_p.add_argument("--report", type=Path, default=None, help="Report JSON")

    check_p = sub.add_parser("check", help="Check reducedness")
    check_p.add_argument("input", type=Path, help="Matrix JSON file")
    check_p.add_argument("--delta", type=float, default=None)
    check_p.add_argument(
        "--notion", choices=[n.value for n in ReducednessNotion], default="lll"
    )
    check_p.add_argument(
        "--realify", action="store_true", help="Check the local real form of the basis"
    )

    bench_p = sub.add_parser("bench", help="Complexity against average-case bounds")
    bench_p.add_argument("--n-list", type=_int_list, required=True)
    bench_p.add_argument("--delta", type=float, default=None)
    bench_p.add_argument("--trials", type=int, default=None)
    bench_p.add_argument("--seed", type=int, default=None, help=SEED_HELP)
    bench_p.add_argument(
        "--variant", choices=VARIANT_CHOICES, default=ReductionVariant.EFFECTIVE.value
    )
    bench_p.add_argument("--dual", action="store_true", help="Reduce dual bases")
    bench_p.add_argument("--output", "-o", type=Path, default=None)

    ber_p = sub.add_parser("ber", help="Bit error rate campaign")
    ber_p.add_argument("config_json", type=Path, help="BER configuration JSON")
    ber_p.add_argument("--seed", type=int, default=None, help=SEED_HELP)
    ber_p.add_argument("--output", "-o", type=Path, default=None)

    compare_p = sub.add_parser("compare", help="Compare variants on shared bases")
    compare_p.add_argument("--n-list", type=_int_list, required=True)
    compare_p.add_argument("--variants", type=_variant_list, required=True)
    compare_p.add_argument("--trials", type=int, default=None)
    compare_p.add_argument("--seed", type=int, default=None, help=SEED_HELP)
    compare_p.add_argument("--delta", type=float, default=None)
    compare_p.add_argument("--budget", type=int, default=None)
    compare_p.add_argument("--sort-mode", choices=SORT_MODE_CHOICES, default=None)
    compare_p.add_argument("--output", "-o", type=Path, default=None)

    init_p = sub.add_parser("init-config", help="Write the default configuration file")
    init_p.add_argument("path", nargs="?", default=None)

    return parser


def _params(
    config: AppConfig, variant: ReductionVariant, delta: float | None
) -> ReductionParams:
    return ReductionParams(
        delta=config.reduction.delta if delta is None else delta,
        max_iterations=config.reduction.max_iterations,
        variant=variant,
        lovasz_slack=config.reduction.lovasz_slack,
    )


def _default_budget(config: AppConfig, variant: ReductionVariant) -> int | None:
    if variant is ReductionVariant.PARALLEL_EFFECTIVE:
        return config.parallel.effective_budget
    if variant is ReductionVariant.PARALLEL_DEEP:
        return config.parallel.deep_budget
    return None


def _seed(args: argparse.Namespace, config: AppConfig) -> int:
    """The --seed flag, else the configured seed.

    Raises:
        ConfigurationError: If neither is set
    """
    seed = args.seed if args.seed is not None else config.simulation.seed
    if seed is None:
        raise ConfigurationError(
            f"{args.command} needs a seed: pass --seed or set simulation.seed"
        )
    return int(seed)


def _output_path(config: AppConfig, path: Path | None) -> Path | None:
    """Relative output paths land under output.directory."""
    if path is None or path.is_absolute():
        return path
    return Path(config.output.directory) / path


def cmd_reduce(args: argparse.Namespace, config: AppConfig, out: TextIO) -> int:
    repository = MatrixRepository(indent=config.output.indent)
    basis = repository.load(args.input)
    variant = ReductionVariant(args.variant or config.reduction.variant)
    reducer = LatticeReducer(
        variant,
        _params(config, variant, args.delta),
        budget=args.budget if args.budget is not None else _default_budget(config, variant),
        finalize=args.finalize,
        dual=args.dual,
        hybrid_parallel_iters=config.parallel.hybrid_parallel_iters,
        sort_mode=SortMode(args.sort_mode or config.parallel.sort_mode),
    )
    reduced, report = reducer.reduce(basis)
    logger.info(
        f"reduced {args.input}: variant={variant.value} swaps={report.swaps} "
        f"insertions={report.insertions}"
    )
    output = _output_path(config, args.output)
    report_path = _output_path(config, args.report)
    if output is None:
        document = {
            "basis": json.loads(repository.dumps(reduced)),
            "report": report.to_dict(),
        }
        out.write(json.dumps(document, indent=config.output.indent) + "\n")
        if report_path is not None:
            write_report(report_path, report, config.output.indent)
        return EXIT_OK
    repository.save(output, reduced)
    report_path = report_path or output.with_suffix(".report.json")
    write_report(report_path, report, config.output.indent)
    return EXIT_OK


def cmd_check(args: argparse.Namespace, config: AppConfig, out: TextIO) -> int:
    basis = MatrixRepository().load(args.input)
    if args.realify:
        basis = realify_local(basis)
    delta = config.reduction.delta if args.delta is None else args.delta
    notion = ReducednessNotion(args.notion)
    violations = check_lll_conditions(
        basis, delta, notion, slack=config.reduction.check_slack
    )
    if not violations:
        out.write(f"PASS {notion.value} delta={delta:g}\n")
        return EXIT_OK
    out.write(f"FAIL {notion.value} delta={delta:g}\n")
    for violation in violations:
        out.write(f"  {violation.describe()}\n")
    return EXIT_CHECK_FAILED


def cmd_bench(args: argparse.Namespace, config: AppConfig, out: TextIO) -> int:
    rows = run_bench(
        args.n_list,
        config.reduction.delta if args.delta is None else args.delta,
        config.simulation.trials if args.trials is None else args.trials,
        _seed(args, config),
        variant=ReductionVariant(args.variant),
        dual=args.dual,
    )
    text = csv_text(BENCH_COLUMNS, [row.as_row() for row in rows])
    if args.output is None:
        out.write(text)
    write_text(_output_path(config, args.output), text)
    return EXIT_OK


def cmd_ber(args: argparse.Namespace, config: AppConfig, out: TextIO) -> int:
    defaults: dict[str, object] = {
        "trials": config.simulation.trials,
        "workers": config.simulation.workers,
        "delta": config.reduction.delta,
        "sort_mode": config.parallel.sort_mode,
    }
    if config.simulation.seed is not None:
        defaults["seed"] = config.simulation.seed
    ber_config = load_ber_config(
        args.config_json,
        overrides={} if args.seed is None else {"seed": args.seed},
        defaults=defaults,
    )
    result = run_ber(ber_config)
    text = csv_text(BER_COLUMNS, ber_rows(result))
    if args.output is None:
        out.write(text)
    write_text(_output_path(config, args.output), text)
    return EXIT_OK


def cmd_compare(args: argparse.Namespace, config: AppConfig, out: TextIO) -> int:
    rows = run_compare(
        args.n_list,
        args.variants,
        config.simulation.trials if args.trials is None else args.trials,
        _seed(args, config),
        delta=config.reduction.delta if args.delta is None else args.delta,
        budget=args.budget,
        hybrid_parallel_iters=config.parallel.hybrid_parallel_iters,
        sort_mode=SortMode(args.sort_mode or config.parallel.sort_mode),
    )
    text = csv_text(COMPARE_COLUMNS, [row.as_row() for row in rows])
    if args.output is None:
        out.write(text)
    write_text(_output_path(config, args.output), text)
    return EXIT_OK


def cmd_init_config(args: argparse.Namespace, out: TextIO) -> int:
    path = ConfigManager(args.config).create_default_config_file(args.path)
    out.write(f"Created configuration file at: {path}\n")
    return EXIT_OK


COMMANDS: dict[str, Callable[[argparse.Namespace, AppConfig, TextIO], int]] = {
    "reduce": cmd_reduce,
    "check": cmd_check,
    "bench": cmd_bench,
    "ber": cmd_ber,
    "compare": cmd_compare,
}


def main(argv: Sequence[str] | None = None, out: TextIO | None = None) -> int:
    """Run one command and return its exit code."""
    stream = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_INVALID

    try:
        if args.command == "init-config":
            return cmd_init_config(args, stream)
        config = load_configuration(args.config)
        setup_logging(config, args.log_level)
        return COMMANDS[args.command](args, config, stream)
    except (SingularBasisError, NotPositiveDefiniteError) as e:
        logger.error(f"{args.command} failed: {e}", exc_info=True)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_SINGULAR
    except IterationCapExceededError as e:
        logger.error(f"{args.command} failed: {e}", exc_info=True)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CAP
    except (ConfigurationError, LatticeError, ValueError, OSError) as e:
        logger.error(f"{args.command} failed: {e}", exc_info=True)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID
