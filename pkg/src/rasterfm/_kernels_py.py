"""Pure-Python (numpy) kernels.

Fallback twins of the compiled routines in ``_kernels.pyx``.  Both backends
must produce bit-identical output: the per-pixel predicate is
floor(t * k) & 1 evaluated in float64, and int64 slot indices convert to
float64 exactly, so the IEEE multiply rounds the same way in both.
"""

from __future__ import annotations

import numpy as np


def tone_map_pixels(
    width: int,
    height: int,
    total_h: int,
    k_c: float,
    k_d: float,
    carrier_t0: int = 0,
    stripe_t0: int = 0,
) -> np.ndarray:
    """Fill a stripe-keyed carrier pattern.

    Row r is an active stripe iff floor((stripe_t0 + r*total_h) * k_d) is odd;
    within an active row, pixel j is white iff
    floor((carrier_t0 + r*total_h + j) * k_c) is odd.  t counts pixel slots
    including blanking, so carrier phase stays continuous across lines.

    Returns a (height, width) uint8 array of 0/1 luminance.
    """
    rows = np.arange(height, dtype=np.int64) * total_h
    stripe_val = (stripe_t0 + rows).astype(np.float64) * k_d
    active = (np.floor(stripe_val).astype(np.int64) & 1).astype(bool)

    out = np.zeros((height, width), dtype=np.uint8)
    if not active.any():
        return out
    cols = np.arange(width, dtype=np.int64)
    t = (carrier_t0 + rows[active, None] + cols[None, :]).astype(np.float64)
    out[active] = (np.floor(t * k_c).astype(np.int64) & 1).astype(np.uint8)
    return out


def render_samples(
    pixels: np.ndarray, total_h: int, total_v: int, frames: int
) -> np.ndarray:
    """Emit one float32 sample per pixel slot in raster order.

    Visible slots carry the pixel luminance, blanking slots 0.0; the frame
    repeats ``frames`` times.
    """
    height, width = pixels.shape
    frame = np.zeros((total_v, total_h), dtype=np.float32)
    frame[:height, :width] = pixels
    flat = frame.ravel()
    if frames == 1:
        return flat.copy()
    return np.tile(flat, frames)
