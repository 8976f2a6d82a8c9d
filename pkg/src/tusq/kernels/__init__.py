"""Hot projection kernels with two interchangeable implementations.

``TUSQ_BACKEND=numba`` (the default when numba imports) runs compiled loops;
``TUSQ_BACKEND=numpy`` runs the vectorised fallback. Both expose the same six
functions and produce identical arrays.
"""

from __future__ import annotations

import os
from types import ModuleType

BACKEND_ENV = "TUSQ_BACKEND"
BACKENDS = ("numba", "numpy")

_loaded: dict[str, ModuleType] = {}


def numba_available() -> bool:
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


def default_backend() -> str:
    name = os.environ.get(BACKEND_ENV, "").strip().lower()
    if name:
        if name not in BACKENDS:
            raise ValueError(f"{BACKEND_ENV} must be one of {BACKENDS}, got {name!r}")
        return name
    return "numba" if numba_available() else "numpy"


def get_backend(name: str | None = None) -> ModuleType:
    name = name or default_backend()
    if name not in BACKENDS:
        raise ValueError(f"unknown backend {name!r}; expected one of {BACKENDS}")
    if name not in _loaded:
        if name == "numba":
            from . import _numba as mod
        else:
            from . import _numpy as mod
        _loaded[name] = mod
    return _loaded[name]
