"""Parity between the compiled kernels and their pure-Python twins."""

import pytest

from degcount import _backend, _pure
from degcount.oracle import havel_hakimi_graph

HAVE_COMPILED = _backend.BACKEND_NAME == "compiled"

needs_compiled = pytest.mark.skipif(
    not HAVE_COMPILED, reason="compiled extension not built")


@needs_compiled
@pytest.mark.parametrize("seed", [0, 1, 7, 123456789])
def test_switch_chain_trajectories_identical(seed):
    edges = havel_hakimi_graph([3] * 8)
    pure = _pure.switch_chain_run(list(edges), 8, 2000, seed)
    fast = _backend.switch_chain_run(list(edges), 8, 2000, seed)
    assert pure == fast


@needs_compiled
def test_switch_chain_large_instance_parity():
    edges = havel_hakimi_graph([10] * 24)
    pure = _pure.switch_chain_run(list(edges), 24, 3000, 42)
    fast = _backend.switch_chain_run(list(edges), 24, 3000, 42)
    assert pure == fast


@needs_compiled
@pytest.mark.parametrize("degrees,forbidden", [
    ((2, 2, 2, 2), ()),
    ((3, 3, 3, 3, 3, 3), ()),
    ((3, 3, 3, 3, 3, 3), ((0, 1), (2, 3))),
    ((4, 4, 4, 4, 4, 4, 4, 4), ((0, 1),)),
    ((1, 2, 2, 3, 2, 2), ()),
])
def test_count_realizations_parity(degrees, forbidden):
    pure = _pure.count_realizations(degrees, forbidden, None)
    fast = _backend.count_realizations(degrees, forbidden, None)
    assert pure == fast


@needs_compiled
def test_count_budget_sentinel_parity():
    assert _pure.count_realizations((3,) * 6, (), 10) == -1
    assert _backend.count_realizations((3,) * 6, (), 10) == -1


def test_pure_backend_forced_by_env(tmp_path):
    import os
    import subprocess
    import sys
    code = ("import degcount; import sys; "
            "sys.exit(0 if degcount.backend_name() == 'pure' else 1)")
    env = dict(os.environ, DEGCOUNT_PURE="1")
    proc = subprocess.run([sys.executable, "-c", code], env=env)
    assert proc.returncode == 0
