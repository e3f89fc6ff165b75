"""Selects the percolation round kernel at import time.

The compiled core (jigsawhg._speedups) is preferred; setting JIGSAWHG_PURE=1
in the environment, or a missing/failed extension build, falls back to the
numpy implementation. Both produce identical results.
"""

from __future__ import annotations

import os

if os.environ.get("JIGSAWHG_PURE"):
    from . import _fallback as _impl

    IMPLEMENTATION = "python"
else:
    try:
        from . import _speedups as _impl  # type: ignore[attr-defined]

        IMPLEMENTATION = "compiled"
    except ImportError:
        from . import _fallback as _impl

        IMPLEMENTATION = "python"

run_rounds = _impl.run_rounds
