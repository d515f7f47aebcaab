"""Synchronous willingness update, convergence detection and outcomes.

Each tick every agent moves by a media push and a neighbourhood pull, both
read from the previous tick's buffer::

    w'(n) = w(n) + alpha * media_term(n) + beta * group_term(n)

``media_term`` is minus the patch exposure, so media always pushes toward
the silent (non-positive) side.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from ._backend import get_kernel
from .config import ModelConfig
from .geometry import neighbor_offsets  # noqa: F401  (re-exported)
from .world import WorldState


class Outcome(str, Enum):
    SILENCE = "silence"
    SPEAKING = "speaking"
    TIE = "tie"


@dataclass
class RunResult:
    silent_count: np.ndarray
    new_silent: np.ndarray
    new_speaking: np.ndarray
    mean_w: np.ndarray
    convergence_tick: int
    non_converged: bool
    outcome: Outcome
    final_silent_fraction: float
    start_tick: int = 0
    snapshots: dict[int, np.ndarray] = field(default_factory=dict, repr=False)

    @property
    def ticks(self) -> np.ndarray:
        return np.arange(self.start_tick, self.start_tick + len(self.silent_count))

    @property
    def last_tick(self) -> int:
        return self.start_tick + len(self.silent_count) - 1

    def same_series(self, other: "RunResult") -> bool:
        return (
            all(
                np.array_equal(getattr(self, f), getattr(other, f))
                for f in ("silent_count", "new_silent", "new_speaking", "mean_w")
            )
            and (self.convergence_tick, self.non_converged, self.outcome, self.start_tick)
            == (other.convergence_tick, other.non_converged, other.outcome, other.start_tick)
        )


def media_terms(world: WorldState) -> np.ndarray:
    return -world.exposure.astype(np.float64)


def media_term(world: WorldState, agent: int) -> float:
    return -float(world.exposure[agent])


def group_term(world: WorldState, agent: int) -> float:
    """Sum of neighbour willingness, accumulated in neighbour-list order."""
    acc = 0.0
    for j in world.neighbor_list(agent):
        acc += float(world.w[j])
    return acc


def _drive(world: WorldState, config: ModelConfig) -> np.ndarray:
    return config.alpha * media_terms(world)


def step(world: WorldState, config: ModelConfig, backend: str | None = None) -> WorldState:
    """One synchronous tick; returns a new state and leaves ``world`` untouched."""
    kernel = get_kernel(backend)
    new = world.copy()
    kernel(world.w, new.w, _drive(world, config), world.index, config.beta, config.threshold)
    if config.clamp is not None:
        np.clip(new.w, -config.clamp, config.clamp, out=new.w)
    new.tick = world.tick + 1
    return new


def detect_stability(speaking_history: Sequence[np.ndarray], window: int) -> bool:
    """True iff the last ``window + 1`` speaking partitions are identical."""
    if window < 1:
        raise ValueError("window must be >= 1")
    if len(speaking_history) < window + 1:
        return False
    recent = speaking_history[-(window + 1):]
    return all(np.array_equal(recent[0], s) for s in recent[1:])


def classify_outcome(result: RunResult | float) -> Outcome:
    """Majority label from the final silent fraction (a RunResult or the bare fraction)."""
    final_silent_fraction = getattr(result, "final_silent_fraction", result)
    if final_silent_fraction > 0.5:
        return Outcome.SILENCE
    if final_silent_fraction < 0.5:
        return Outcome.SPEAKING
    return Outcome.TIE


def _snapshot_ticks(snapshot_every, max_tick: int) -> set[int]:
    if snapshot_every is None:
        return set()
    if isinstance(snapshot_every, int):
        if snapshot_every < 1:
            raise ValueError("snapshot_every must be positive")
        return set(range(0, max_tick + 1, snapshot_every))
    return {int(t) for t in snapshot_every}


def run_sim(
    world: WorldState,
    config: ModelConfig,
    *,
    backend: str | None = None,
    snapshot_every: int | Iterable[int] | None = None,
) -> RunResult:
    """Step until the speaking partition holds still for the stability window.

    ``world`` is not mutated. A partition change at tick t resets the
    window; the run converges at the first tick ``t`` with no change during
    ``(t - window, t]`` and reports the window's first tick. Runs reaching
    ``max_ticks`` without that are flagged non-converged. ``snapshot_every``
    takes a cadence or an explicit set of ticks; snapshots hold copies of w.
    """
    kernel = get_kernel(backend)
    thr = config.threshold
    window = config.stability_window
    drive = _drive(world, config)
    index = world.index
    beta = config.beta
    clamp = config.clamp
    n = world.n_agents

    w = world.w.copy()
    buf = np.empty_like(w)
    t = world.tick
    wanted = _snapshot_ticks(snapshot_every, config.max_ticks)
    snapshots = {t: w.copy()} if t in wanted else {}

    silent = [int((w <= thr).sum())]
    new_silent = [0]
    new_speaking = [0]
    mean_w = [float(w.mean())]
    last_change = t
    converged = False
    while t < config.max_ticks:
        s, a, b = kernel(w, buf, drive, index, beta, thr)
        if clamp is not None:
            np.clip(buf, -clamp, clamp, out=buf)
        w, buf = buf, w
        t += 1
        silent.append(s)
        new_silent.append(a)
        new_speaking.append(b)
        mean_w.append(float(w.mean()))
        if t in wanted:
            snapshots[t] = w.copy()
        if a or b:
            last_change = t
        if t - last_change >= window:
            converged = True
            break

    fraction = silent[-1] / n
    return RunResult(
        silent_count=np.array(silent, dtype=np.int64),
        new_silent=np.array(new_silent, dtype=np.int64),
        new_speaking=np.array(new_speaking, dtype=np.int64),
        mean_w=np.array(mean_w),
        convergence_tick=last_change if converged else config.max_ticks,
        non_converged=not converged,
        outcome=classify_outcome(fraction),
        final_silent_fraction=fraction,
        start_tick=world.tick,
        snapshots=snapshots,
    )


def same_state_fraction(w: np.ndarray, table: np.ndarray, threshold: float = 0.0) -> float:
    """Mean share of occupied neighbours sharing an agent's speaking state.

    Agents with no occupied neighbours are skipped.
    """
    n = len(w)
    silent = np.append(w <= threshold, False)
    occupied = table < n
    same = (silent[table] == silent[:n, None]) & occupied
    counts = occupied.sum(axis=1)
    has = counts > 0
    return float(np.mean(same.sum(axis=1)[has] / counts[has]))
