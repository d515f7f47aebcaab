"""Torus neighbourhood geometry."""

from __future__ import annotations

import math

import numpy as np


def neighbor_offsets(radius: float) -> list[tuple[int, int]]:
    """Integer offsets ``(dx, dy) != (0, 0)`` with ``dx**2 + dy**2 <= radius**2``.

    Ordered row-major: by ``dy`` first, then ``dx``.
    """
    if not radius > 0:
        raise ValueError("radius must be positive")
    r = int(math.floor(radius))
    r2 = radius * radius
    return [
        (dx, dy)
        for dy in range(-r, r + 1)
        for dx in range(-r, r + 1)
        if (dx or dy) and dx * dx + dy * dy <= r2
    ]


def occupancy_grid(positions: np.ndarray, width: int, height: int) -> np.ndarray:
    """``(width, height)`` array of agent index per patch, -1 where empty."""
    occ = np.full((width, height), -1, dtype=np.int64)
    occ[positions[:, 0], positions[:, 1]] = np.arange(len(positions))
    return occ


def neighbor_table(
    positions: np.ndarray, width: int, height: int, radius: float
) -> np.ndarray:
    """Padded ``(n_agents, n_offsets)`` neighbour table.

    Row ``i`` lists the occupants of agent ``i``'s in-radius patches in
    offset order; empty patches hold the sentinel ``n_agents``.
    """
    n = len(positions)
    offs = np.array(neighbor_offsets(radius), dtype=np.int64).reshape(-1, 2)
    occ = occupancy_grid(positions, width, height)
    xs = (positions[:, 0, None] + offs[None, :, 0]) % width
    ys = (positions[:, 1, None] + offs[None, :, 1]) % height
    table = occ[xs, ys]
    table[table < 0] = n
    return table


def to_csr(table: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Compress a padded table into ``(indptr, indices)``, preserving row order."""
    n = table.shape[0]
    mask = table < n
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(mask.sum(axis=1), out=indptr[1:])
    indices = np.ascontiguousarray(table[mask], dtype=np.int64)
    return indptr, indices
