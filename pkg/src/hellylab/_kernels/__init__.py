"""Hot kernels: bitmask scans over hypergraph levels and Monte Carlo acceptance.

Two interchangeable implementations live here:

* ``numba_impl`` — ``@njit``-compiled loops (default when numba imports);
* ``numpy_impl`` — vectorized / plain-Python fallback with identical results.

Selection: set ``HELLYLAB_KERNELS=numpy`` (or ``numba``) to force one; by
default numba is used when available. The choice affects speed only — parity
tests assert identical outputs — so reports never depend on it.
"""

from __future__ import annotations

import os

_FORCED = os.environ.get("HELLYLAB_KERNELS", "").strip().lower()
if _FORCED not in ("", "numba", "numpy"):
    raise RuntimeError(
        f"HELLYLAB_KERNELS must be 'numba' or 'numpy', got {_FORCED!r}"
    )

if _FORCED == "numpy":
    from . import numpy_impl as _impl

    BACKEND = "numpy"
else:
    try:
        from . import numba_impl as _impl

        BACKEND = "numba"
    except ImportError:
        if _FORCED == "numba":
            raise
        from . import numpy_impl as _impl

        BACKEND = "numpy"

edge_bitmap = _impl.edge_bitmap
clique_bitmap = _impl.clique_bitmap
colorful_scan = _impl.colorful_scan
mc_accept = _impl.mc_accept


def get_impl(name: str):
    """Fetch a specific implementation module ('numba' or 'numpy')."""
    if name == "numpy":
        from . import numpy_impl

        return numpy_impl
    if name == "numba":
        from . import numba_impl

        return numba_impl
    raise ValueError(f"unknown kernel implementation {name!r}")
