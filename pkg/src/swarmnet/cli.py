"""Command-line interface: run, sweep, analyze, and destruction subcommands.

All subcommands share the same flags: `--config` points at a key=value
file (defaults apply when omitted), `--set key=value` overrides single
fields, `--seed` overrides the base seed, `--out` names the output
directory, and `--jobs` bounds the sweep worker pool. Exit codes: 0 on
success, 1 for configuration problems, 2 for runtime failures.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import interaction, io
from .config import load_config
from .errors import ConfigurationError, SwarmnetError
from .experiment import ExperimentConfig, run_cell, run_sweep

log = logging.getLogger("swarmnet")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", default=None,
                        help="key=value config file (defaults if omitted)")
    common.add_argument("--out", metavar="DIR", default="out",
                        help="output directory (default: out)")
    common.add_argument("--set", metavar="KEY=VALUE", action="append",
                        dest="overrides", default=[],
                        help="override one config field (repeatable)")
    common.add_argument("--seed", metavar="N", type=int, default=None,
                        help="override base_seed")
    common.add_argument("--jobs", metavar="N", type=int, default=1,
                        help="worker processes for sweeps (default: 1)")
    common.add_argument("-v", "--verbose", action="count", default=0,
                        help="increase log verbosity (-v info, -vv debug)")

    parser = argparse.ArgumentParser(
        prog="swarmnet",
        description="Swarm optimization runs with interaction-network analysis.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("run", parents=[common],
                   help="execute one run of a single configured topology")
    sub.add_parser("sweep", parents=[common],
                   help="execute the full topology x repetition matrix")
    p_analyze = sub.add_parser("analyze", parents=[common],
                               help="recompute metrics from saved logs")
    p_analyze.add_argument("logdir", help="directory containing selection logs")
    p_destr = sub.add_parser("destruction", parents=[common],
                             help="emit the destruction surface of one log")
    p_destr.add_argument("logfile", help="path to one selection log CSV")
    return parser


def _load(args) -> ExperimentConfig:
    overrides = list(args.overrides)
    if args.seed is not None:
        overrides.append(f"base_seed={args.seed}")
    return load_config(args.config, overrides)


def _write_cell(out_dir: Path, result) -> None:
    out_dir.mkdir(parents=True, exist_ok=True)
    io.write_interaction_log(out_dir / "log.csv", result.log)
    io.write_run_trace(out_dir / "trace.csv", result.trace)
    io.write_diversity_series(
        out_dir / "diversity.csv", result.id_iterations, result.id_values
    )


def cmd_run(args) -> int:
    config = _load(args)
    if len(config.topologies) != 1:
        raise ConfigurationError(
            "run executes a single cell; configure exactly one topology "
            f"(got {len(config.topologies)})"
        )
    result = run_cell(config, config.topologies[0], repetition=0)
    _write_cell(Path(args.out), result)
    status = (
        f"converged at {result.trace.converged_at}"
        if result.converged else "reached t_max"
    )
    print(
        f"{result.function_id.value} {result.label}: "
        f"final fitness {io.fmt(result.trace.final_fitness)}, "
        f"mean ID {io.fmt(result.mean_id)}, {status} "
        f"after {len(result.log)} iterations"
    )
    return 0


def cmd_sweep(args) -> int:
    config = _load(args)
    results, summaries = run_sweep(config, jobs=args.jobs)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for result in results:
        cell_dir = (
            out / result.function_id.value / result.label
            / f"rep_{result.repetition}"
        )
        _write_cell(cell_dir, result)
    io.write_summary(out / "summary.csv", summaries)
    for row in summaries:
        print(
            f"{row.function_id.value} {row.topology_kind.value}_{row.k}: "
            f"mean ID {io.fmt(row.mean_id)} "
            f"({io.fmt(row.id_ci_low)}, {io.fmt(row.id_ci_high)}), "
            f"mean final fitness {io.fmt(row.mean_final_fitness)}"
        )
    print(f"summary written to {out / 'summary.csv'}")
    return 0


def _destruction_rows(logf, windows):
    """Clipped-window destruction curves of the final-iteration network."""
    total = len(logf)
    clipped = sorted(set(interaction.clip_windows(windows, total)))
    return [
        (w, interaction.destruction_curve(interaction.build_network(logf, total, w)))
        for w in clipped
    ]


def cmd_analyze(args) -> int:
    config = _load(args)
    log_dir = Path(args.logdir)
    if not log_dir.is_dir():
        raise SwarmnetError(f"log directory not found: {log_dir}")
    files = io.find_log_files(log_dir)
    if not files:
        raise SwarmnetError(f"no logs found under {log_dir}")
    out = Path(args.out)
    for path in files:
        rel = path.relative_to(log_dir)
        dest = out / rel.parent
        dest.mkdir(parents=True, exist_ok=True)
        logf = io.read_interaction_log(path)
        iters, values = interaction.diversity_series(
            logf, config.windows, config.id_sample_stride
        )
        io.write_diversity_series(dest / "diversity.csv", iters, values)
        io.write_destruction_surface(
            dest / "destruction.csv", _destruction_rows(logf, config.windows)
        )
        log.info("analyzed %s -> %s", path, dest)
    print(f"analyzed {len(files)} log(s) into {out}")
    return 0


def cmd_destruction(args) -> int:
    config = _load(args)
    logf = io.read_interaction_log(args.logfile)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    io.write_destruction_surface(
        out / "destruction.csv", _destruction_rows(logf, config.windows)
    )
    print(f"destruction surface written to {out / 'destruction.csv'}")
    return 0


_COMMANDS = {
    "run": cmd_run,
    "sweep": cmd_sweep,
    "analyze": cmd_analyze,
    "destruction": cmd_destruction,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    level = (logging.WARNING, logging.INFO, logging.DEBUG)[min(args.verbose, 2)]
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")
    try:
        return _COMMANDS[args.command](args)
    except ConfigurationError as exc:
        log.error("configuration error: %s", exc)
        return 1
    except SwarmnetError as exc:
        log.error("%s", exc)
        return 2
    except Exception:
        log.exception("unexpected failure")
        return 2


if __name__ == "__main__":
    sys.exit(main())
