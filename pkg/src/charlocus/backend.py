"""Quadrature backend selection.

The hot kernels (pairwise reductions over quadrature nodes) exist twice:
jitted with numba and as pure numpy.  The environment variable
``CHARLOCUS_BACKEND`` forces one of ``numba`` / ``numpy``; by default numba
is used when importable and numpy otherwise.
"""

from __future__ import annotations

import os

from .graded import InputError

ENV_VAR = "CHARLOCUS_BACKEND"

_BACKENDS = ("numba", "numpy")


def _numba_available() -> bool:
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


def backend_name(explicit: str | None = None) -> str:
    """Resolve the backend: explicit argument, then env var, then default."""
    name = explicit or os.environ.get(ENV_VAR, "").strip().lower() or None
    if name is None:
        return "numba" if _numba_available() else "numpy"
    if name not in _BACKENDS:
        raise InputError(f"unknown backend {name!r}; expected one of {_BACKENDS}")
    if name == "numba" and not _numba_available():
        raise InputError("backend 'numba' requested but numba is not importable")
    return name


def kernels(explicit: str | None = None):
    """Return the kernel module for the resolved backend."""
    name = backend_name(explicit)
    if name == "numba":
        from . import _quad_numba
        return _quad_numba
    from . import _quad_numpy
    return _quad_numpy
