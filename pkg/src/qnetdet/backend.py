"""Kernel backend selection.

The compiled extension is preferred when present; the pure-Python
kernels are a drop-in replacement.  Set QNETDET_BACKEND=py or
QNETDET_BACKEND=c to force a choice (forcing "c" raises if the
extension was not built).
"""

from __future__ import annotations

import os


def _load():
    choice = os.environ.get("QNETDET_BACKEND", "auto")
    if choice not in ("auto", "c", "py"):
        raise ValueError(f"QNETDET_BACKEND must be auto, c or py, got {choice!r}")
    if choice in ("auto", "c"):
        try:
            from . import _kernels_c as impl
            return impl
        except ImportError:
            if choice == "c":
                raise
    from . import _kernels_py as impl
    return impl


kernels = _load()


def backend_name() -> str:
    """Name of the active kernel backend: "c" or "py"."""
    return kernels.BACKEND
