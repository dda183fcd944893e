#!/usr/bin/env python3
"""Benchmark the compiled kernels against their pure-Python twins.

Covers the two hot loops: switch-chain steps and realization counting.
Also asserts trajectory/count parity so the speed numbers are for
identical work.

Run:  python3 benchmarks/compare_backends.py
"""

import time

from degcount import _backend, _pure, oracle


def time_it(fn, *args, repeat=3):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def bench_switch_chain():
    print("== switch chain (n=60, 30-regular) ==")
    edges = oracle.havel_hakimi_graph([30] * 60)
    compiled = _backend.BACKEND_NAME == "compiled"
    pure_steps = 50_000
    t_pure, out_pure = time_it(_pure.switch_chain_run, list(edges), 60,
                               pure_steps, 7)
    print(f"pure:     {pure_steps:>9} steps in {t_pure:8.3f}s "
          f"({pure_steps / t_pure:12.0f} steps/s)")
    if compiled:
        fast_steps = 5_000_000
        t_fast, _ = time_it(_backend.switch_chain_run, list(edges), 60,
                            fast_steps, 7)
        print(f"compiled: {fast_steps:>9} steps in {t_fast:8.3f}s "
              f"({fast_steps / t_fast:12.0f} steps/s)")
        check = _backend.switch_chain_run(list(edges), 60, pure_steps, 7)
        assert check == out_pure, "backend trajectories diverged"
        print(f"speedup:  {(fast_steps / t_fast) / (pure_steps / t_pure):8.1f}x "
              "(parity verified)")
    else:
        print("compiled backend unavailable; only the pure kernel ran")


def bench_counting():
    print("== realization counting (4-regular, n=8: 19355 graphs) ==")
    degrees = (4,) * 8
    t_pure, c_pure = time_it(_pure.count_realizations, degrees, (), None)
    print(f"pure:     count={c_pure} in {t_pure:8.3f}s")
    if _backend.BACKEND_NAME == "compiled":
        t_fast, c_fast = time_it(_backend.count_realizations, degrees, (), None)
        assert c_fast == c_pure
        print(f"compiled: count={c_fast} in {t_fast:8.3f}s")
        print(f"speedup:  {t_pure / t_fast:8.1f}x (parity verified)")
    else:
        print("compiled backend unavailable; only the pure kernel ran")


if __name__ == "__main__":
    print(f"active backend: {_backend.BACKEND_NAME}")
    bench_switch_chain()
    bench_counting()
