"""Kernel backend selection.

Imports the compiled extension when present, otherwise the numpy fallback.
Set RASTERFM_KERNELS=python to force the fallback (used by the benchmark
and the backend-equivalence tests).
"""

from __future__ import annotations

import os

from . import _kernels_py

_impl = _kernels_py
BACKEND = "python"

if os.environ.get("RASTERFM_KERNELS", "auto") != "python":
    try:
        from . import _kernels as _compiled

        _impl = _compiled
        BACKEND = "compiled"
    except ImportError:
        pass

tone_map_pixels = _impl.tone_map_pixels
render_samples = _impl.render_samples
