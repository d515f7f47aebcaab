"""Compare the compiled and numpy tick kernels.

    python benchmarks/bench_kernels.py [--reps 20]

Reports per-tick kernel time on the default 50x50 world for several vision
radii, then wall time for a batch of full runs, and checks both backends
produce identical runs.
"""

import argparse
import time

import numpy as np

from spiral_sim._backend import BACKENDS
from spiral_sim.config import ModelConfig
from spiral_sim.dynamics import media_terms, run_sim
from spiral_sim.world import init_world


def time_kernel(kernel, world, cfg, ticks=500):
    drive = cfg.alpha * media_terms(world)
    w, buf = world.w.copy(), np.empty_like(world.w)
    start = time.perf_counter()
    for _ in range(ticks):
        kernel(w, buf, drive, world.index, cfg.beta, cfg.threshold)
        w, buf = buf, w
    return (time.perf_counter() - start) / ticks


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--reps", type=int, default=20)
    args = ap.parse_args()
    names = sorted(BACKENDS)
    print(f"backends: {names}")

    print("\nper-tick kernel time (us), N=1000 on 50x50")
    print(f"{'radius':>6} " + " ".join(f"{n:>10}" for n in names) + "   speedup")
    for radius in (1, 3, 6):
        cfg = ModelConfig(vision_radius=float(radius), alpha=0.002, beta=0.0001)
        world = init_world(cfg, 0)
        times = {n: time_kernel(BACKENDS[n], world, cfg) for n in names}
        speed = times["python"] / times["cython"] if "cython" in times else float("nan")
        print(f"{radius:>6} " + " ".join(f"{times[n] * 1e6:>10.1f}" for n in names) + f"   {speed:6.1f}x")

    cfg = ModelConfig(alpha=0.002, beta=0.0005)
    print(f"\n{args.reps} full runs (alpha=0.002, beta=0.0005)")
    results = {}
    for n in names:
        start = time.perf_counter()
        results[n] = [run_sim(init_world(cfg, s), cfg, backend=n) for s in range(args.reps)]
        print(f"{n:>10}: {time.perf_counter() - start:7.2f} s")
    if len(names) == 2:
        same = all(a.same_series(b) for a, b in zip(*results.values()))
        print(f"identical results across backends: {same}")


if __name__ == "__main__":
    main()
