"""Kernel backend selection.

The compiled extension is preferred when importable; the pure-Python lane
is the fallback. ``TWISTEDRS_BACKEND=python`` or ``=compiled`` forces a
lane (forcing ``compiled`` raises if the extension is missing).
"""

from __future__ import annotations

import os

_forced = os.environ.get("TWISTEDRS_BACKEND", "").strip().lower()

if _forced == "python":
    from . import _pykernels as kernels
elif _forced == "compiled":
    from . import _core as kernels  # type: ignore[no-redef]
elif _forced == "":
    try:
        from . import _core as kernels  # type: ignore[no-redef]
    except ImportError:
        from . import _pykernels as kernels  # type: ignore[no-redef]
else:
    raise RuntimeError(
        f"TWISTEDRS_BACKEND={_forced!r} invalid; use 'compiled' or 'python'"
    )

BACKEND: str = kernels.BACKEND
FieldOps = kernels.FieldOps


def load_backend(name: str):
    """Load a specific kernel module by name (used by the benchmark)."""
    if name == "python":
        from . import _pykernels

        return _pykernels
    if name == "compiled":
        from . import _core

        return _core
    raise ValueError(f"unknown backend {name!r}")
