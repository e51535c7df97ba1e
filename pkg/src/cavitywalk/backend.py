"""Kernel backend selection: numba-compiled loops or pure-numpy fallback.

The hot integration kernels exist in two functionally identical variants:
per-trajectory scalar loops compiled with numba (fast, parallel over
ensemble members) and a vectorized numpy lockstep path.  Selection is
made once at import time:

    CAVITYWALK_BACKEND=numpy   force the pure-numpy path
    CAVITYWALK_BACKEND=numba   require numba (raise if unavailable)

unset/auto: numba when importable, numpy otherwise.
"""

from __future__ import annotations

import os

_ENV = "CAVITYWALK_BACKEND"


def _detect() -> str:
    choice = os.environ.get(_ENV, "auto").strip().lower() or "auto"
    if choice not in ("auto", "numba", "numpy"):
        raise RuntimeError(f"{_ENV} must be 'numba', 'numpy' or 'auto', got {choice!r}")
    if choice == "numpy":
        return "numpy"
    try:
        import numba  # noqa: F401
        return "numba"
    except ImportError:
        if choice == "numba":
            raise RuntimeError(f"{_ENV}=numba but numba is not importable")
        return "numpy"


_BACKEND = _detect()


def active_backend() -> str:
    """Name of the kernel backend selected at import time."""
    return _BACKEND


def using_numba() -> bool:
    return _BACKEND == "numba"


def set_worker_threads(n: int | None) -> int:
    """Set the numba thread count for ensemble parallelism.

    Returns the effective worker count.  No-op (returns 1) on the numpy
    backend, which integrates ensembles in vectorized lockstep.
    """
    if not using_numba():
        return 1
    import numba

    if n is None or n <= 0:
        n = min(numba.config.NUMBA_NUM_THREADS, numba.get_num_threads() or 1) or 1
        n = numba.config.NUMBA_NUM_THREADS
    n = max(1, min(int(n), numba.config.NUMBA_NUM_THREADS))
    numba.set_num_threads(n)
    return n
