"""Replicated runs, the eight named experiment presets, and aggregation."""

from __future__ import annotations

from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial

import numpy as np

from .config import ModelConfig, validate_config
from .dynamics import Outcome, RunResult, run_sim
from .errors import DegenerateVariance, NoConvergedRuns, UnknownPreset
from .stats import StatResult, anova_oneway, linreg_r2, mean_sd, pearson_r, welch_t
from .world import init_world


@dataclass
class ReplicationSet:
    config: ModelConfig
    seeds: list[int]
    results: list[RunResult]

    def __len__(self):
        return len(self.results)

    def convergence_times(self) -> np.ndarray:
        return np.array([r.convergence_tick for r in self.results if not r.non_converged])

    def outcome_counts(self) -> dict[Outcome, int]:
        c = Counter(r.outcome for r in self.results)
        return {o: c.get(o, 0) for o in Outcome}


def _one_run(seed: int, config: ModelConfig, backend, snapshot_every) -> RunResult:
    return run_sim(init_world(config, seed), config, backend=backend, snapshot_every=snapshot_every)


def run_replications(
    config: ModelConfig,
    k: int,
    base_seed: int = 0,
    *,
    workers: int = 1,
    backend: str | None = None,
    snapshot_every=None,
) -> ReplicationSet:
    """Run ``k`` independent worlds seeded ``base_seed .. base_seed + k - 1``.

    With ``workers > 1`` runs are spread over processes; results come back
    in seed order, so the set does not depend on the worker count.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    validate_config(config)
    seeds = [base_seed + i for i in range(k)]
    job = partial(_one_run, config=config, backend=backend, snapshot_every=snapshot_every)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(job, seeds, chunksize=max(1, k // (4 * workers))))
    else:
        results = [job(s) for s in seeds]
    return ReplicationSet(config, seeds, results)


@dataclass(frozen=True)
class Condition:
    label: str
    config: ModelConfig


@dataclass(frozen=True)
class Experiment:
    name: str
    description: str
    conditions: tuple[Condition, ...]
    # "growth": regression of silent count on tick; "rate_decay": Pearson r of
    # per-tick new silent counts on tick; None: compare convergence times
    analysis: str | None = None
    reps: int = 100


def _cfg(**kw) -> ModelConfig:
    return ModelConfig(population=kw.pop("population", 1000), vision_radius=kw.pop("vision_radius", 3.0), **kw)


PRESETS: dict[str, Experiment] = {
    "e1": Experiment(
        "e1", "media only",
        (Condition("media_only", _cfg(alpha=0.02, beta=0.0)),),
        analysis="growth",
    ),
    "e2": Experiment(
        "e2", "reference groups only",
        (Condition("group_only", _cfg(alpha=0.0, beta=0.02)),),
    ),
    "e3": Experiment(
        "e3", "strong media, alpha/beta = 10",
        (Condition("strong_media", _cfg(alpha=0.02, beta=0.002)),),
    ),
    "e4": Experiment(
        "e4", "strong reference groups, alpha/beta = 0.1",
        (Condition("strong_groups", _cfg(alpha=0.002, beta=0.02)),),
    ),
    "e5": Experiment(
        "e5", "group reinforcement of media under strong media",
        (
            Condition("control", _cfg(alpha=0.002, beta=0.0001)),
            Condition("experimental", _cfg(alpha=0.002, beta=0.0005)),
        ),
    ),
    "e6": Experiment(
        "e6", "vision sweep",
        tuple(
            Condition(f"vision={v}", _cfg(alpha=0.002, beta=0.0001, vision_radius=float(v)))
            for v in (2, 4, 6)
        ),
    ),
    "e7": Experiment(
        "e7", "population sweep",
        tuple(
            Condition(f"population={n}", _cfg(alpha=0.002, beta=0.0001, population=n))
            for n in (1000, 1500, 2000)
        ),
    ),
    "e8": Experiment(
        "e8", "decay of the per-tick silencing rate (strong media runs)",
        (Condition("strong_media", _cfg(alpha=0.02, beta=0.002)),),
        analysis="rate_decay",
    ),
}


def preset(name: str) -> Experiment:
    try:
        return PRESETS[name.lower()]
    except KeyError:
        raise UnknownPreset(f"unknown preset {name!r}") from None


@dataclass
class ConditionSummary:
    label: str
    n_runs: int
    n_converged: int
    mean_convergence: float
    sd_convergence: float
    outcomes: dict[Outcome, int]

    @property
    def n_non_converged(self) -> int:
        return self.n_runs - self.n_converged

    def frequency(self, outcome: Outcome) -> float:
        return self.outcomes[outcome] / self.n_runs


@dataclass
class ExperimentSummary:
    conditions: list[ConditionSummary]
    stats: list[tuple[str, StatResult]] = field(default_factory=list)
    fit: object = None  # LinearFit for growth analyses

    def condition(self, label: str) -> ConditionSummary:
        return next(c for c in self.conditions if c.label == label)


def growth_phase_pairs(rset: ReplicationSet, cutoff: float = 0.95) -> tuple[np.ndarray, np.ndarray]:
    """Pooled (tick, silent_count) while fewer than ``cutoff`` of agents are silent."""
    n = rset.config.population
    xs, ys = [], []
    for r in rset.results:
        keep = r.silent_count < cutoff * n
        xs.append(r.ticks[keep])
        ys.append(r.silent_count[keep])
    return np.concatenate(xs), np.concatenate(ys)


def new_silent_series(rset: ReplicationSet) -> tuple[np.ndarray, np.ndarray, StatResult]:
    """Pool per-tick speaking-to-silent counts across runs and correlate with tick.

    Tick 0 carries no transition and is left out; every later tick up to each
    run's last simulated tick contributes one pair.
    """
    xs = np.concatenate([r.ticks[1:] for r in rset.results])
    ys = np.concatenate([r.new_silent[1:] for r in rset.results])
    if len(np.unique(xs)) < 3:
        raise DegenerateVariance("need at least 3 distinct ticks")
    return xs, ys, pearson_r(xs, ys)


def _condition_summary(label: str, rset: ReplicationSet) -> ConditionSummary:
    times = rset.convergence_times()
    if len(times) >= 2:
        m, sd = mean_sd(times)
    elif len(times) == 1:
        m, sd = float(times[0]), float("nan")
    else:
        m = sd = float("nan")
    return ConditionSummary(label, len(rset), len(times), m, sd, rset.outcome_counts())


def summarize(sets: dict[str, ReplicationSet], analysis: str | None = None) -> ExperimentSummary:
    """Per-condition convergence statistics plus the designated test.

    Non-converged runs are excluded from convergence means but still counted
    in the outcome table. Two conditions get a Welch t test, three or more a
    one-way ANOVA on convergence ticks.
    """
    if not sets:
        raise ValueError("no replication sets")
    conds = [_condition_summary(label, s) for label, s in sets.items()]
    if all(c.n_converged == 0 for c in conds):
        raise NoConvergedRuns("no run reached stability")
    summary = ExperimentSummary(conds)

    if analysis == "growth":
        for label, s in sets.items():
            x, y = growth_phase_pairs(s)
            fit = linreg_r2(x, y)
            summary.fit = fit
            summary.stats.append((label, fit.as_stat(len(x))))
    elif analysis == "rate_decay":
        for label, s in sets.items():
            summary.stats.append((label, new_silent_series(s)[2]))
    elif analysis is not None:
        raise ValueError(f"unknown analysis {analysis!r}")

    samples = {label: s.convergence_times() for label, s in sets.items()}
    labels = list(samples)
    if len(labels) == 2:
        a, b = labels
        summary.stats.append((f"{a} vs {b}", welch_t(samples[a], samples[b])))
    elif len(labels) >= 3:
        summary.stats.append(("all", anova_oneway([samples[k] for k in labels])))
    return summary


def run_experiment(
    exp: Experiment | str,
    reps: int | None = None,
    base_seed: int = 0,
    *,
    workers: int = 1,
    backend: str | None = None,
    snapshot_every=None,
) -> tuple[dict[str, ReplicationSet], ExperimentSummary]:
    if isinstance(exp, str):
        exp = preset(exp)
    reps = exp.reps if reps is None else reps
    sets = {
        c.label: run_replications(
            c.config, reps, base_seed, workers=workers, backend=backend,
            snapshot_every=snapshot_every,
        )
        for c in exp.conditions
    }
    return sets, summarize(sets, exp.analysis)
