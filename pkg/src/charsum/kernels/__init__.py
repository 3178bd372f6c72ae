"""Hot kernels with a numba path and a pure-numpy fallback.

The backend is picked once at import: numba when importable, unless the
environment variable ``CHARSUM_DISABLE_NUMBA`` is set to a non-empty value
other than ``0``. Both backends take and return the same arrays, so every
caller can pass ``backend="numpy"`` or ``backend="numba"`` explicitly.
"""

import importlib
import os
from types import ModuleType

from . import _numpy
from ._tables import (
    HALF_STATES,
    base3_decode_luts,
    base3_encode_lut,
    basis_masks,
    pair_arrays,
)

__all__ = [
    "BACKEND",
    "HALF_STATES",
    "available_backends",
    "base3_decode_luts",
    "base3_encode_lut",
    "basis_masks",
    "get",
    "pair_arrays",
]


def _numba_module() -> ModuleType | None:
    try:
        return importlib.import_module("._numba", __name__)
    except ImportError:
        return None


def _disabled() -> bool:
    flag = os.environ.get("CHARSUM_DISABLE_NUMBA", "")
    return flag not in ("", "0")


_numba = None if _disabled() else _numba_module()

BACKEND = "numba" if _numba is not None else "numpy"


def available_backends() -> list[str]:
    out = ["numpy"]
    if _numba is not None or _numba_module() is not None:
        out.insert(0, "numba")
    return out


def get(backend: str | None = None) -> ModuleType:
    """Kernel module for ``backend`` (default: the import-time choice)."""
    name = backend or BACKEND
    if name == "numpy":
        return _numpy
    if name == "numba":
        mod = _numba if _numba is not None else _numba_module()
        if mod is None:
            raise RuntimeError("numba backend requested but numba is not importable")
        return mod
    raise ValueError(f"unknown backend {name!r}")
