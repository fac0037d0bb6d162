"""Kernel backend selection.

The compiled extension `_kernels_c` is preferred when present; the
pure-Python module `_kernels_py` is the fallback.  The choice is made once,
at import time.  Set PAULITHERM_BACKEND=python (or =cython) to force one.
"""

from __future__ import annotations

import os

_requested = os.environ.get("PAULITHERM_BACKEND", "auto").strip().lower()

if _requested in ("", "auto"):
    try:
        from . import _kernels_c as kernels  # type: ignore[no-redef]
    except ImportError:
        from . import _kernels_py as kernels  # type: ignore[no-redef]
elif _requested in ("cython", "c", "compiled"):
    from . import _kernels_c as kernels  # type: ignore[no-redef]
elif _requested in ("python", "py", "pure"):
    from . import _kernels_py as kernels  # type: ignore[no-redef]
else:
    raise ImportError(
        f"PAULITHERM_BACKEND={_requested!r} not recognised; "
        "use 'auto', 'cython' or 'python'")


def backend_name() -> str:
    """Name of the kernel implementation in use ('cython' or 'python')."""
    return kernels.BACKEND_NAME
