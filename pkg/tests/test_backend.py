import importlib
import sys

import numpy as np

import spiral_sim

from spiral_sim import _backend
from spiral_sim.config import ModelConfig
from spiral_sim.dynamics import run_sim
from spiral_sim.world import init_world


def test_falls_back_to_numpy_without_extension(monkeypatch):
    monkeypatch.setitem(sys.modules, "spiral_sim._kernels", None)
    monkeypatch.delattr(spiral_sim, "_kernels", raising=False)
    try:
        reloaded = importlib.reload(_backend)
        assert reloaded.DEFAULT_BACKEND == "python"
        assert sorted(reloaded.BACKENDS) == ["python"]
    finally:
        monkeypatch.undo()
        importlib.reload(_backend)


def test_unknown_backend_rejected():
    try:
        _backend.get_kernel("fortran")
    except ValueError as exc:
        assert "fortran" in str(exc)
    else:
        raise AssertionError("expected ValueError")


def test_every_backend_runs(backend):
    cfg = ModelConfig(alpha=0.02, beta=0.002)
    res = run_sim(init_world(cfg, 1), cfg, backend=backend)
    assert not res.non_converged
    assert np.all(np.diff(res.silent_count) >= 0)
