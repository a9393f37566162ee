import argparse
import asyncio
import sys
from pathlib import Path
from typing import Optional, Sequence

import uvicorn
from loguru import logger

from cfevrp.backend.config import SolverConfig
from cfevrp.backend.emit import emit_smtlib
from cfevrp.backend.optimize import effective_mode
from cfevrp.bench.harness import bench, cell_of, solve_instance
from cfevrp.bench.plot import plot
from cfevrp.db.dao.artifact_dao import artifact_dao
from cfevrp.db.models.instance import Instance
from cfevrp.encoder.encode import EncodeOptions, encode
from cfevrp.exceptions import CfevrpError, PipelineError
from cfevrp.generator.generate import generate_suite
from cfevrp.generator.spec import DEADLINES, REDUCTIONS, InstanceClass
from cfevrp.log import configure_logging
from cfevrp.oracle.search import oracle_solve
from cfevrp.settings import BoundStrategy, SolveMode, settings
from cfevrp.validation.validate import validate

FIG1 = "fig1"

EXIT_REJECTED = 1
EXIT_INPUT = 2


def _load(path: str) -> Instance:
    """Instance file, or the bundled reference instance for ``fig1``."""
    if path == FIG1:
        return artifact_dao.load_fig1()
    return artifact_dao.load_instance(path)


def _solver_config(args: argparse.Namespace) -> SolverConfig:
    return SolverConfig.from_settings(
        path=args.solver,
        time_limit=args.time_limit,
        mode=args.mode,
        bound_strategy=args.bound_strategy,
        random_seed=args.seed,
    )


def _encode_options(args: argparse.Namespace) -> EncodeOptions:
    return EncodeOptions(include_capacity=not args.no_capacity)


def cmd_generate(args: argparse.Namespace) -> int:
    written = generate_suite(
        args.out_dir,
        [InstanceClass(value) for value in args.classes],
        args.reductions,
        args.deadlines,
        args.seed if args.seed is not None else args.seeds,
    )
    print(f"{len(written)} instances written to {args.out_dir}")
    return 0


def cmd_encode(args: argparse.Namespace) -> int:
    encoded = encode(_load(args.instance), _encode_options(args))
    config = _solver_config(args)
    document = emit_smtlib(encoded, effective_mode(config), random_seed=config.random_seed)
    if args.output:
        Path(args.output).write_text(document, encoding="utf-8")
    else:
        sys.stdout.write(document)
    summary = ", ".join(f"{family}={count}" for family, count in encoded.stats.items() if count)
    print(
        f"{len(encoded.declarations)} declarations, {encoded.assertion_count} assertions ({summary})",
        file=sys.stderr,
    )
    return 0


def cmd_solve(args: argparse.Namespace) -> int:
    if args.instance == FIG1:
        instance_id, cell = FIG1, "-"
    else:
        instance_id, cell = Path(args.instance).stem, cell_of(Path(args.instance))
    try:
        instance = _load(args.instance)
    except CfevrpError as e:
        raise PipelineError("load", e) from e
    result = asyncio.run(
        solve_instance(instance, _solver_config(args), _encode_options(args), instance_id, cell)
    )
    print(result.record.model_dump_json())
    if result.core_families:
        print(f"unsat core families: {', '.join(result.core_families)}")
    if result.schedule is not None:
        if args.schedule:
            artifact_dao.save_schedule(result.schedule, args.schedule)
        print(result.report.render())
        if result.optimal:
            print("optimal: yes")
    return 0


def cmd_validate(args: argparse.Namespace) -> int:
    instance = _load(args.instance)
    report = validate(
        artifact_dao.load_schedule(args.schedule), instance, include_capacity=not args.no_capacity
    )
    print(report.model_dump_json(indent=2) if args.json else report.render())
    return 0 if report.overall else EXIT_REJECTED


def cmd_oracle(args: argparse.Namespace) -> int:
    result = oracle_solve(_load(args.instance), optimize=not args.decide)
    print(f"status: {result.status.value}")
    if result.cost is not None:
        print(f"cost: {result.cost}{' (optimal)' if result.optimal else ''}")
    print(f"states explored: {result.states}")
    if result.schedule is not None:
        print(result.schedule.model_dump_json(indent=2))
        if args.schedule:
            artifact_dao.save_schedule(result.schedule, args.schedule)
    return 0


def cmd_bench(args: argparse.Namespace) -> int:
    results = args.results or settings.results_dir / "results.csv"
    records, table = asyncio.run(
        bench(
            args.manifest,
            _solver_config(args),
            results,
            workers=args.workers or settings.workers,
            options=_encode_options(args),
        )
    )
    print(table)
    print(f"{len(records)} records in {results}", file=sys.stderr)
    return 0


def cmd_plot(args: argparse.Namespace) -> int:
    source = plot(artifact_dao.load_schedule(args.schedule), _load(args.instance), args.svg)
    if args.output:
        Path(args.output).write_text(source, encoding="utf-8")
    else:
        sys.stdout.write(source)
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    uvicorn.run(
        "cfevrp.application:get_app",
        host=settings.host,
        port=settings.port,
        log_level=settings.log_level.value.lower(),
        reload=settings.is_development,
        factory=True,
        workers=1,
    )
    return 0


def _solver_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--solver", help="solver executable (default from CFEVRP_SOLVER_PATH)")
    parser.add_argument("--time-limit", type=float, help="seconds per instance")
    parser.add_argument("--mode", type=SolveMode, choices=list(SolveMode))
    parser.add_argument("--bound-strategy", type=BoundStrategy, choices=list(BoundStrategy))
    parser.add_argument("--seed", type=int, help="solver random seed")
    parser.add_argument(
        "--no-capacity", action="store_true", help="leave out the segment capacity constraints"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cfevrp", description="Conflict-free electric vehicle routing toolkit"
    )
    parser.add_argument("--log-level", help="overrides CFEVRP_LOG_LEVEL")
    commands = parser.add_subparsers(dest="command", required=True)

    gen = commands.add_parser("generate", help="write random instances and their manifest")
    gen.add_argument("--out-dir", type=Path, default=Path("instances"))
    gen.add_argument(
        "--class", "--classes", dest="classes", nargs="+",
        default=[c.value for c in InstanceClass], choices=[c.value for c in InstanceClass],
    )
    gen.add_argument(
        "--reduction", "--reductions", dest="reductions", nargs="+", type=int,
        default=list(REDUCTIONS), choices=REDUCTIONS,
    )
    gen.add_argument(
        "--deadline", "--deadlines", dest="deadlines", nargs="+", type=int,
        default=list(DEADLINES),
    )
    seeds = gen.add_mutually_exclusive_group()
    seeds.add_argument("--seed", nargs="+", type=int, help="seed values to generate")
    seeds.add_argument("--seeds", type=int, default=5, help="seeds 0..N-1 per cell")
    gen.set_defaults(handler=cmd_generate)

    enc = commands.add_parser("encode", help="print the SMT-LIB2 script of an instance")
    enc.add_argument("instance", help=f"instance file or '{FIG1}'")
    enc.add_argument("-o", "--output", type=Path)
    _solver_flags(enc)
    enc.set_defaults(handler=cmd_encode)

    solve = commands.add_parser("solve", help="solve and validate one instance")
    solve.add_argument("instance", help=f"instance file or '{FIG1}'")
    solve.add_argument("--schedule", type=Path, help="write the schedule here")
    _solver_flags(solve)
    solve.set_defaults(handler=cmd_solve)

    val = commands.add_parser("validate", help="check a schedule against an instance")
    val.add_argument("instance", help=f"instance file or '{FIG1}'")
    val.add_argument("schedule", type=Path)
    val.add_argument("--json", action="store_true", help="print the report as JSON")
    val.add_argument(
        "--no-capacity", action="store_true",
        help="schedule was solved without segment capacity; report 19-20 as warnings",
    )
    val.set_defaults(handler=cmd_validate)

    orc = commands.add_parser("oracle", help="exhaustive search on a tiny instance")
    orc.add_argument("instance")
    orc.add_argument("--decide", action="store_true", help="stop at feasibility")
    orc.add_argument("--schedule", type=Path, help="write the witness schedule here")
    orc.set_defaults(handler=cmd_oracle)

    ben = commands.add_parser("bench", help="solve a suite and print the summary table")
    ben.add_argument("manifest", type=Path)
    ben.add_argument("--results", type=Path, help="results CSV")
    ben.add_argument("--workers", type=int)
    _solver_flags(ben)
    ben.set_defaults(handler=cmd_bench)

    plt = commands.add_parser("plot", help="draw a schedule's routes as DOT")
    plt.add_argument("instance", help=f"instance file or '{FIG1}'")
    plt.add_argument("schedule", type=Path)
    plt.add_argument("-o", "--output", type=Path)
    plt.add_argument("--svg", type=Path, help="also render SVG (needs Graphviz)")
    plt.set_defaults(handler=cmd_plot)

    serve = commands.add_parser("serve", help="run the HTTP API")
    serve.set_defaults(handler=cmd_serve)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Entrypoint of the command-line interface."""
    args = build_parser().parse_args(argv)
    configure_logging(args.log_level)
    try:
        return args.handler(args)
    except PipelineError as e:
        logger.error(str(e))
        return EXIT_REJECTED if e.stage == "validate" else EXIT_INPUT
    except (CfevrpError, OSError, ValueError) as e:
        logger.error(str(e))
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
