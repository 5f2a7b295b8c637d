"""Kernel backend selection.

The hot loops (per-trigger occupation decisions, whole-network rate
evaluation) exist twice: a compiled Cython extension and a pure NumPy
fallback with identical semantics.  Import-time selection prefers the
extension; set ``DSS_SIM_PURE_PYTHON=1`` to force the fallback (useful for
benchmarking and for debugging kernel parity).
"""

from __future__ import annotations

import os

if os.environ.get("DSS_SIM_PURE_PYTHON", "") not in ("", "0"):
    from . import _kernel_py as _impl
else:
    try:
        from . import _speedups as _impl  # type: ignore[no-redef]
    except ImportError:
        from . import _kernel_py as _impl  # type: ignore[no-redef]

BACKEND: str = _impl.BACKEND
decide_node = _impl.decide_node
total_rates = _impl.total_rates

__all__ = ["BACKEND", "decide_node", "total_rates"]
