"""Kernel backend selection.

The compiled extension is preferred; the numpy fallback is used when the
extension is missing or when ``SPECORDER_BACKEND=python`` is set (useful for
benchmarks and cross-checking).
"""

import os

_forced = os.environ.get("SPECORDER_BACKEND", "").lower()

if _forced == "python":
    from . import _pykernels as kernels

    BACKEND = "python"
elif _forced in ("", "compiled"):
    try:
        from . import _ckernels as kernels

        BACKEND = "compiled"
    except ImportError:
        if _forced == "compiled":
            raise
        from . import _pykernels as kernels

        BACKEND = "python"
else:
    raise ValueError(f"unknown SPECORDER_BACKEND value: {_forced!r}")
