"""Kernel backend selection.

The compiled extension is used when it imports; otherwise the pure-Python
module takes over.  ``GIRTHLAB_PURE=1`` forces the fallback.
"""

from __future__ import annotations

import os

from . import _kernels_py

if os.environ.get("GIRTHLAB_PURE") == "1":
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
        BACKEND = "compiled"
    except ImportError:
        _impl = _kernels_py
        BACKEND = "python"

bfs_dist = _impl.bfs_dist
girth = _impl.girth
diameter = _impl.diameter
min_cycle_through_edge = _impl.min_cycle_through_edge
count_paths = _impl.count_paths
cycles_of_length = _impl.cycles_of_length

__all__ = ["BACKEND", "bfs_dist", "girth", "diameter", "min_cycle_through_edge",
           "count_paths", "cycles_of_length"]
