#!/usr/bin/env python3
"""Benchmark the compiled stepper against the pure-python twin.

Workload: relaxation to steady state over a sample of the emission-figure
cooperativity grid (the hot path of the cross-solver acceptance check).

    python benchmarks/bench_stepper.py [n_points]
"""

import sys
import time

import numpy as np

from brimode import SystemParams, assemble_drift, coupling_from_cooperativity
from brimode._backend import available_backends
from brimode.dynamics import real_embedding


def workload(n_points):
    systems = []
    for gamma_m in (0.30, 0.45):
        for c2 in np.linspace(0.1, 15.0, n_points):
            params = SystemParams(
                delta1=0.9 - 1.242, delta2=0.9, omega_m=1.242, kappa2=2.0,
                gamma_m=gamma_m, g_m=0.025, g1=0.4,
                g2=coupling_from_cooperativity(float(c2), gamma_m, 2.0))
            systems.append(real_embedding(assemble_drift(params)))
    return systems


def run(advance, systems):
    t0 = time.perf_counter()
    steps = 0
    for A, e in systems:
        resid_tol = 1e-8 * float(np.linalg.norm(e))
        status, _, _, _, _, n_accept, n_reject = advance(
            A, e, np.zeros(A.shape[0]), 0.0, 1000.0, 1e-10, 1e-12, 0.01,
            resid_tol, False)
        assert status == 1, "settle did not converge"
        steps += n_accept + n_reject
    return time.perf_counter() - t0, steps


def main():
    n_points = int(sys.argv[1]) if len(sys.argv) > 1 else 75
    systems = workload(n_points)
    print(f"workload: {len(systems)} relaxations to steady state "
          f"(12-dim system, residual target 1e-8)\n")
    backends = available_backends()
    timings = {}
    for name in sorted(backends):
        advance = backends[name]
        run(advance, systems[:4])  # warm-up
        elapsed, steps = run(advance, systems)
        timings[name] = elapsed
        print(f"{name:>10}: {elapsed:8.3f} s total, "
              f"{elapsed / len(systems) * 1e3:7.2f} ms/relaxation, "
              f"{steps / elapsed:10.0f} steps/s")
    if {"python", "compiled"} <= timings.keys():
        print(f"\nspeedup (compiled vs python): "
              f"{timings['python'] / timings['compiled']:.1f}x")
    else:
        print("\ncompiled stepper not built; only the pure-python path was timed")


if __name__ == "__main__":
    main()
