"""Backend selection for the numeric kernels.

``STICKY_SPECTRA_BACKEND=numpy`` forces the pure-numpy kernels; the default
uses numba when it can be imported. ``STICKY_SPECTRA_THREADS`` caps the
number of threads used by parallel kernels and parameter sweeps.
"""

import logging
import os
import warnings

logger = logging.getLogger(__name__)

_requested = os.environ.get("STICKY_SPECTRA_BACKEND", "numba").strip().lower()
if _requested not in ("numba", "numpy"):
    raise ValueError(
        f"STICKY_SPECTRA_BACKEND must be 'numba' or 'numpy', got {_requested!r}"
    )

HAS_NUMBA = False
if _requested == "numba":
    try:
        warnings.filterwarnings("ignore", message="The TBB threading layer")
        import numba  # noqa: F401

        HAS_NUMBA = True
    except ImportError:  # pragma: no cover - depends on environment
        logger.warning("numba not importable, falling back to numpy kernels")

BACKEND = "numba" if HAS_NUMBA else "numpy"


def max_workers():
    """Thread cap from ``STICKY_SPECTRA_THREADS`` (default: CPU count)."""
    raw = os.environ.get("STICKY_SPECTRA_THREADS")
    if raw is None:
        return os.cpu_count() or 1
    try:
        n = int(raw)
    except ValueError:
        raise ValueError(f"STICKY_SPECTRA_THREADS must be an integer, got {raw!r}")
    return max(1, n)


if HAS_NUMBA:
    import numba

    numba.set_num_threads(min(max_workers(), numba.config.NUMBA_NUM_THREADS))
