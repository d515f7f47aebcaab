"""Config text format and CSV output bundle.

Config files are ``key = value`` lines; ``#`` starts a comment, lists are
comma separated, and any key left out keeps its default. CSV reals use 9
significant digits and LF line endings.
"""

from __future__ import annotations

import csv
import io
from pathlib import Path

import numpy as np

from .config import CONFIG_FIELDS, InitialSplit, ModelConfig, validate_config
from .dynamics import RunResult
from .errors import ConfigSyntaxError
from .experiments import ExperimentSummary, ReplicationSet
from .world import WorldState

_INT_KEYS = {"grid_width", "grid_height", "population", "max_ticks", "stability_window", "seed"}
_FLOAT_KEYS = {"vision_radius", "alpha", "beta", "threshold", "w_sd"}

RUN_HEADER = ("tick", "silent_count", "new_silent", "new_speaking", "mean_w")
SUMMARY_HEADER = ("rep", "seed", "convergence_tick", "non_converged", "outcome", "final_silent_fraction")
EXPERIMENT_HEADER = ("condition", "stat_kind", "statistic", "df", "exceeds_p001")
SNAPSHOT_HEADER = ("agent_id", "x", "y", "w", "speaking", "media_exposure")


def parse_value(key: str, raw: str, line: int | None = None):
    try:
        if key in _INT_KEYS:
            return int(raw)
        if key in _FLOAT_KEYS:
            return float(raw)
        if key == "media_levels":
            return tuple(int(p) for p in raw.split(",") if p.strip())
        if key == "initial_split":
            return InitialSplit(raw.lower())
        if key == "clamp":
            return None if raw.lower() in ("none", "") else float(raw)
    except ValueError:
        raise ConfigSyntaxError(f"bad value {raw!r} for key {key!r}", line, key) from None
    raise ConfigSyntaxError(f"unknown key {key!r}", line, key)


def parse_config_values(text: str) -> dict:
    values: dict = {}
    for lineno, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigSyntaxError("expected 'key = value'", lineno)
        key, raw = (part.strip() for part in line.split("=", 1))
        if key not in CONFIG_FIELDS:
            raise ConfigSyntaxError(f"unknown key {key!r}", lineno, key)
        if key in values:
            raise ConfigSyntaxError(f"duplicate key {key!r}", lineno, key)
        values[key] = parse_value(key, raw, lineno)
    return values


def parse_config(text: str) -> ModelConfig:
    return validate_config(ModelConfig(**parse_config_values(text)))


def format_config(config: ModelConfig) -> str:
    out = []
    for key in CONFIG_FIELDS:
        v = getattr(config, key)
        if key == "media_levels":
            v = ", ".join(str(m) for m in v)
        elif key == "initial_split":
            v = v.value
        elif v is None:
            v = "none"
        else:
            v = repr(v)
        out.append(f"{key} = {v}")
    return "\n".join(out) + "\n"


def fmt_real(x: float) -> str:
    return f"{x:.9g}"


def _write(path: Path, header, rows) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    path.write_text(buf.getvalue(), encoding="utf-8", newline="")


def write_run_csv(path: Path, result: RunResult) -> None:
    rows = (
        (int(t), int(s), int(a), int(b), fmt_real(m))
        for t, s, a, b, m in zip(
            result.ticks, result.silent_count, result.new_silent, result.new_speaking, result.mean_w
        )
    )
    _write(path, RUN_HEADER, rows)


def write_snapshot_csv(path: Path, world: WorldState, w: np.ndarray, threshold: float = 0.0) -> None:
    exposure = world.exposure
    rows = (
        (i, int(world.positions[i, 0]), int(world.positions[i, 1]), fmt_real(w[i]),
         int(w[i] > threshold), int(exposure[i]))
        for i in range(world.n_agents)
    )
    _write(path, SNAPSHOT_HEADER, rows)


def write_summary_csv(path: Path, rset: ReplicationSet) -> None:
    rows = (
        (rep, seed, r.convergence_tick, int(r.non_converged), r.outcome.value,
         fmt_real(r.final_silent_fraction))
        for rep, (seed, r) in enumerate(zip(rset.seeds, rset.results))
    )
    _write(path, SUMMARY_HEADER, rows)


def write_experiment_csv(path: Path, summary: ExperimentSummary) -> None:
    rows = (
        (label, s.kind.value, fmt_real(s.statistic), s.df_text(), int(s.exceeds_p001))
        for label, s in summary.stats
    )
    _write(path, EXPERIMENT_HEADER, rows)
