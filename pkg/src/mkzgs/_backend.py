"""Backend selection for the hot kernels.

The kernels in :mod:`mkzgs.kernels` come in two flavours: loop code compiled
with numba, and a vectorised pure-numpy path. ``MKZGS_BACKEND=numpy`` (or a
missing numba install) selects the latter. ``MKZGS_THREADS`` caps numba's
thread pool.
"""
import os

try:
    import numba
except ImportError:  # pragma: no cover - numba is an optional accelerator
    numba = None

HAVE_NUMBA = numba is not None

_requested = os.environ.get("MKZGS_BACKEND", "numba").strip().lower()
if _requested not in ("numba", "numpy"):
    raise RuntimeError(f"MKZGS_BACKEND must be 'numba' or 'numpy', got {_requested!r}")

BACKEND = "numba" if (HAVE_NUMBA and _requested == "numba") else "numpy"

if HAVE_NUMBA and os.environ.get("MKZGS_THREADS"):
    numba.set_num_threads(int(os.environ["MKZGS_THREADS"]))


def njit(func):
    """Compile ``func`` with numba when available, else return it untouched."""
    if not HAVE_NUMBA:
        return func
    return numba.njit(cache=True, fastmath=False)(func)


def set_backend(name):
    """Switch backend at runtime (used by the benchmark and consistency tests)."""
    global BACKEND
    if name not in ("numba", "numpy"):
        raise ValueError(name)
    if name == "numba" and not HAVE_NUMBA:
        raise RuntimeError("numba is not installed")
    BACKEND = name


def get_backend():
    return BACKEND
