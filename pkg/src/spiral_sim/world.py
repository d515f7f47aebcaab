"""World construction and seeded initialisation.

All randomness for one world comes from a single ``numpy.random.Generator``
backed by PCG64 and seeded with the config's 64-bit seed. Draw order is
fixed: agent placement, then the media field, then willingness magnitudes,
then (for the balanced split) the sign permutation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .config import InitialSplit, ModelConfig, validate_config
from .errors import InvalidPopulation
from .geometry import neighbor_table, to_csr


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


class NeighborIndex(NamedTuple):
    """Neighbour lists as a padded table and as CSR arrays (same row order)."""

    table: np.ndarray
    indptr: np.ndarray
    indices: np.ndarray


@dataclass
class WorldState:
    tick: int
    w: np.ndarray
    positions: np.ndarray
    media: np.ndarray
    neighbors: np.ndarray
    indptr: np.ndarray = field(repr=False)
    indices: np.ndarray = field(repr=False)

    @property
    def n_agents(self) -> int:
        return len(self.w)

    @property
    def index(self) -> NeighborIndex:
        return NeighborIndex(self.neighbors, self.indptr, self.indices)

    @property
    def exposure(self) -> np.ndarray:
        """Media exposure of each agent's patch."""
        return self.media[self.positions[:, 0], self.positions[:, 1]]

    def neighbor_list(self, i: int) -> np.ndarray:
        return self.indices[self.indptr[i]:self.indptr[i + 1]]

    @property
    def neighbor_lists(self) -> list[np.ndarray]:
        return [self.neighbor_list(i) for i in range(self.n_agents)]

    def speaking(self, threshold: float = 0.0) -> np.ndarray:
        return self.w > threshold

    def copy(self) -> "WorldState":
        return WorldState(
            self.tick, self.w.copy(), self.positions, self.media,
            self.neighbors, self.indptr, self.indices,
        )


def sample_initial_w(
    rng: np.random.Generator,
    n: int,
    w_sd: float = 1.0,
    split: InitialSplit | str = InitialSplit.BALANCED,
) -> np.ndarray:
    """Initial willingness values drawn around zero with sd ``w_sd``.

    Under the balanced split, magnitudes come from |N(0, w_sd^2)| and a
    uniformly chosen ``ceil(n/2)`` of them are made non-positive, so the
    silent/speaking split is exact.
    """
    if n < 2:
        raise InvalidPopulation(f"need at least 2 agents, got {n}")
    split = InitialSplit(split)
    draws = rng.normal(0.0, w_sd, size=n)
    if split is InitialSplit.RANDOM:
        return draws
    # |z| == 0 would land a "speaking" agent on the threshold
    mags = np.maximum(np.abs(draws), np.finfo(float).tiny)
    silent = rng.permutation(n)[: math.ceil(n / 2)]
    w = mags.copy()
    w[silent] = -mags[silent]
    return w


def assign_media(rng: np.random.Generator, config: ModelConfig) -> np.ndarray:
    levels = np.asarray(config.media_levels, dtype=np.int64)
    picks = rng.integers(0, len(levels), size=(config.grid_width, config.grid_height))
    return levels[picks]


def place_agents(rng: np.random.Generator, config: ModelConfig) -> np.ndarray:
    """Distinct patches for each agent, as an ``(n, 2)`` array of (x, y)."""
    patches = rng.choice(config.n_patches, size=config.population, replace=False)
    return np.column_stack((patches % config.grid_width, patches // config.grid_width)).astype(np.int64)


def init_world(config: ModelConfig, seed: int | None = None) -> WorldState:
    validate_config(config)
    rng = make_rng(config.seed if seed is None else seed)
    positions = place_agents(rng, config)
    media = assign_media(rng, config)
    w = sample_initial_w(rng, config.population, config.w_sd, config.initial_split)
    table = neighbor_table(positions, config.grid_width, config.grid_height, config.vision_radius)
    indptr, indices = to_csr(table)
    return WorldState(0, w, positions, media, table, indptr, indices)
