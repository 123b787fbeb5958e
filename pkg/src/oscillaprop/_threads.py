"""Thread-count plumbing.

Reads OSCILLAPROP_THREADS and caps the BLAS/OpenMP pools before numpy is
imported; imported first by the package __init__ so the cap takes effect.
"""

from __future__ import annotations

import os

_VARS = (
    "OMP_NUM_THREADS",
    "OPENBLAS_NUM_THREADS",
    "MKL_NUM_THREADS",
    "NUMEXPR_NUM_THREADS",
)


def apply_thread_cap() -> None:
    cap = os.environ.get("OSCILLAPROP_THREADS")
    if not cap:
        return
    try:
        n = max(1, int(cap))
    except ValueError:
        return
    for var in _VARS:
        os.environ.setdefault(var, str(n))


apply_thread_cap()
