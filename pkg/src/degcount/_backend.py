"""Backend selection: compiled kernels when available, pure Python otherwise.

Set DEGCOUNT_PURE=1 to force the pure backend even when the compiled
extension is importable (used by the backend-parity tests and the
benchmark).  Both backends share seed semantics, so the selection never
changes results, only speed.
"""

from __future__ import annotations

import os

from . import _pure

_speedups = None
if not os.environ.get("DEGCOUNT_PURE"):
    try:
        from . import _speedups  # type: ignore[attr-defined]
    except ImportError:
        _speedups = None

if _speedups is not None:
    BACKEND_NAME = "compiled"
    switch_chain_run = _speedups.switch_chain_run
    count_realizations = _speedups.count_realizations
else:
    BACKEND_NAME = "pure"
    switch_chain_run = _pure.switch_chain_run
    count_realizations = _pure.count_realizations

# enumeration streams stay in Python on every backend
enumerate_realizations = _pure.enumerate_realizations


def backend_name() -> str:
    return BACKEND_NAME
