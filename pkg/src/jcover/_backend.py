"""Select the compiled kernel module when it is importable.

The extension is optional: every kernel has a pure-Python fallback at its
call site, chosen when the extension is missing or when the JCOVER_BACKEND
environment variable forces a side.  Set JCOVER_BACKEND=pure (or
JCOVER_PURE=1) to ignore the extension; JCOVER_BACKEND=compiled raises if
the extension cannot be loaded.
"""

from __future__ import annotations

import os

_requested = os.environ.get("JCOVER_BACKEND", "").strip().lower()
if os.environ.get("JCOVER_PURE") == "1" and not _requested:
    _requested = "pure"

_impl = None
if _requested == "pure":
    BACKEND = "pure"
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:
        if _requested == "compiled":
            raise
        BACKEND = "pure"


def get(name: str):
    """The compiled kernel with this name, or None to use the fallback."""
    if _impl is None:
        return None
    return getattr(_impl, name, None)
