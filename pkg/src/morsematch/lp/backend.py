"""Select the simplex kernel implementation at import time.

MORSEMATCH_LP_BACKEND=python forces the numpy reference kernels,
=cython requires the compiled extension, =auto (default) prefers the
compiled extension and falls back silently.
"""

from __future__ import annotations

import os

from . import _kernel_py


def _load(choice: str):
    if choice == "python":
        return _kernel_py, "python"
    try:
        from . import _kernel_cy
    except ImportError:
        if choice == "cython":
            raise ImportError(
                "MORSEMATCH_LP_BACKEND=cython but the compiled kernel "
                "is not built; reinstall with a C compiler available")
        return _kernel_py, "python"
    return _kernel_cy, "cython"


_choice = os.environ.get("MORSEMATCH_LP_BACKEND", "auto").strip().lower()
if _choice not in ("auto", "cython", "python"):
    raise ValueError(
        f"MORSEMATCH_LP_BACKEND must be auto, cython or python, not {_choice!r}")
kernel, kernel_name = _load(_choice)


def get_kernel(name: str | None = None):
    """Return (module, name); ``name`` overrides the environment choice."""
    if name is None:
        return kernel, kernel_name
    if name not in ("auto", "cython", "python"):
        raise ValueError(f"unknown backend {name!r}")
    return _load(name)
