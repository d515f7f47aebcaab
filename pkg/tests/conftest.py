import numpy as np
import pytest

from spiral_sim._backend import BACKENDS
from spiral_sim.geometry import neighbor_table, to_csr
from spiral_sim.world import WorldState


def hand_world(positions, w, media, radius=1.0):
    """World with explicit positions, willingness and ``(width, height)`` media grid."""
    positions = np.asarray(positions, dtype=np.int64)
    media = np.asarray(media, dtype=np.int64)
    width, height = media.shape
    table = neighbor_table(positions, width, height, radius)
    indptr, indices = to_csr(table)
    return WorldState(0, np.asarray(w, dtype=np.float64), positions, media, table, indptr, indices)


@pytest.fixture(params=sorted(BACKENDS))
def backend(request):
    return request.param
