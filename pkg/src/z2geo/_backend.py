"""Kernel backend selection.

``Z2GEO_BACKEND=numpy`` forces the vectorised numpy kernels, ``numba`` requires
the jitted ones, and the default ``auto`` uses numba whenever it imports.
"""

import os

_requested = os.environ.get("Z2GEO_BACKEND", "auto").strip().lower()
if _requested not in ("auto", "numba", "numpy"):
    raise ImportError(f"Z2GEO_BACKEND must be auto, numba or numpy, not {_requested!r}")

try:
    import numba  # noqa: F401

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

if _requested == "numba" and not HAVE_NUMBA:
    raise ImportError("Z2GEO_BACKEND=numba but numba is not importable")

BACKEND = "numba" if (HAVE_NUMBA and _requested != "numpy") else "numpy"
