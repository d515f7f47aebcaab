"""Command-line entry point: ``spiral-sim {run,experiment,preset,sweep}``."""

from __future__ import annotations

import argparse
import re
import sys
from pathlib import Path

from .config import CONFIG_FIELDS, ModelConfig, validate_config
from .dynamics import run_sim
from .errors import SpiralSimError
from .experiments import Condition, Experiment, preset, run_experiment
from .serialize import (
    format_config,
    parse_config,
    parse_value,
    write_experiment_csv,
    write_run_csv,
    write_snapshot_csv,
    write_summary_csv,
)
from .world import init_world


class CliError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError(message)


def _load_config(path: str | None) -> ModelConfig:
    if path is None:
        return validate_config(ModelConfig())
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CliError(f"cannot read config {path}: {exc.strerror}") from None
    return parse_config(text)


def _out_dir(path: str) -> Path:
    out = Path(path)
    try:
        out.mkdir(parents=True, exist_ok=True)
        probe = out / ".write_test"
        probe.write_text("")
        probe.unlink()
    except OSError as exc:
        raise CliError(f"output directory {path} not writable: {exc.strerror}") from None
    return out


def _slug(label: str) -> str:
    return re.sub(r"[^A-Za-z0-9_.-]+", "_", label)


def _write_bundle(out: Path, sets, summary) -> None:
    if len(sets) == 1:
        (rset,) = sets.values()
        write_summary_csv(out / "summary.csv", rset)
    else:
        for label, rset in sets.items():
            write_summary_csv(out / f"summary_{_slug(label)}.csv", rset)
    for label, rset in sets.items():
        (out / f"config_{_slug(label)}.txt").write_text(format_config(rset.config), encoding="utf-8")
    write_experiment_csv(out / "experiment.csv", summary)


def cmd_run(args) -> None:
    config = _load_config(args.config)
    if args.seed is not None:
        config = validate_config(config.replace(seed=args.seed))
    out = _out_dir(args.out)
    world = init_world(config)
    result = run_sim(world, config, snapshot_every=args.snapshot_every)
    write_run_csv(out / "run.csv", result)
    for tick, w in sorted(result.snapshots.items()):
        write_snapshot_csv(out / f"snapshot_t{tick}.csv", world, w, config.threshold)


def _run_and_write(exp: Experiment, args) -> None:
    out = _out_dir(args.out)
    sets, summary = run_experiment(exp, args.reps, args.base_seed, workers=args.workers)
    _write_bundle(out, sets, summary)


def cmd_experiment(args) -> None:
    config = _load_config(args.config)
    _run_and_write(Experiment("custom", "config file", (Condition("config", config),)), args)


def cmd_preset(args) -> None:
    _run_and_write(preset(args.name), args)


def cmd_sweep(args) -> None:
    config = _load_config(args.config)
    if "=" not in args.vary:
        raise CliError("--vary expects key=v1,v2,...")
    key, raw = (p.strip() for p in args.vary.split("=", 1))
    if key not in CONFIG_FIELDS:
        raise CliError(f"unknown key {key!r}")
    if key == "media_levels":
        raise CliError("media_levels cannot be swept")
    values = [v.strip() for v in raw.split(",") if v.strip()]
    if not values:
        raise CliError("--vary needs at least one value")
    conditions = tuple(
        Condition(f"{key}={v}", validate_config(config.replace(**{key: parse_value(key, v)})))
        for v in values
    )
    _run_and_write(Experiment("sweep", f"sweep over {key}", conditions), args)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="spiral-sim", description="Spiral-of-silence agent-based simulation")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    r = sub.add_parser("run", help="single run; writes run.csv and optional snapshots")
    r.add_argument("--config")
    r.add_argument("--seed", type=int)
    r.add_argument("--snapshot-every", type=int)
    r.add_argument("--out", required=True)
    r.set_defaults(func=cmd_run)

    def batch_flags(sp):
        sp.add_argument("--reps", type=int, default=100)
        sp.add_argument("--base-seed", type=int, default=0)
        sp.add_argument("--workers", type=int, default=1)
        sp.add_argument("--out", required=True)

    e = sub.add_parser("experiment", help="replicate one config")
    e.add_argument("--config")
    batch_flags(e)
    e.set_defaults(func=cmd_experiment)

    pr = sub.add_parser("preset", help="run a named experiment e1..e8")
    pr.add_argument("--name", required=True)
    batch_flags(pr)
    pr.set_defaults(func=cmd_preset)

    sw = sub.add_parser("sweep", help="replicate a config across values of one key")
    sw.add_argument("--config")
    sw.add_argument("--vary", required=True)
    batch_flags(sw)
    sw.set_defaults(func=cmd_sweep)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise CliError("missing subcommand (run, experiment, preset, sweep)")
        if getattr(args, "reps", 1) < 1:
            raise CliError("--reps must be >= 1")
        args.func(args)
    except (CliError, SpiralSimError, ValueError) as exc:
        print(f"spiral-sim: error: {exc}".replace("\n", " "), file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
