"""Select the integrator kernel at import time.

The compiled extension is preferred; the pure-Python twin is used when the
extension is missing or when ``MLOSC_BACKEND=python`` is set.
"""

from __future__ import annotations

import os

if os.environ.get("MLOSC_BACKEND", "").lower() == "python":
    from . import _kernel_py as kernel
else:
    try:
        from . import _kernel as kernel  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernel_py as kernel

BACKEND: str = kernel.BACKEND
