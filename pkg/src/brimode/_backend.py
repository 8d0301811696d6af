"""Stepper backend selection: compiled extension if built, else pure python.

Set ``BRIMODE_PURE=1`` to force the pure-python stepper even when the
compiled extension is available (useful for testing the fallback).
"""

import os

from . import _stepper_py

_FORCE_PURE = os.environ.get("BRIMODE_PURE", "") not in ("", "0")

try:
    if _FORCE_PURE:
        raise ImportError("pure-python stepper forced via BRIMODE_PURE")
    from . import _stepper

    advance = _stepper.advance
    COMPILED = True
except ImportError:
    advance = _stepper_py.advance
    COMPILED = False

STATUS_T_MAX = _stepper_py.STATUS_T_MAX
STATUS_RESIDUAL = _stepper_py.STATUS_RESIDUAL
STATUS_UNDERFLOW = _stepper_py.STATUS_UNDERFLOW


def available_backends() -> dict:
    """Name -> advance callable for every importable backend (for benchmarks/tests)."""
    backends = {"python": _stepper_py.advance}
    try:
        from . import _stepper as compiled

        backends["compiled"] = compiled.advance
    except ImportError:
        pass
    return backends
