# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for the per-pixel hot loops.

Must stay bit-identical to ``_kernels_py``: same float64 expression
floor(t * k) with t converted from an integer slot index, so both backends
round identically.
"""

from libc.math cimport floor

import numpy as np


def tone_map_pixels(
    int width,
    int height,
    int total_h,
    double k_c,
    double k_d,
    long long carrier_t0=0,
    long long stripe_t0=0,
):
    """Fill a stripe-keyed carrier pattern; see _kernels_py.tone_map_pixels."""
    out = np.zeros((height, width), dtype=np.uint8)
    cdef unsigned char[:, ::1] px = out
    cdef long long row_t, t
    cdef int r, j
    with nogil:
        for r in range(height):
            row_t = (<long long> r) * total_h
            if (<long long> floor((stripe_t0 + row_t) * k_d)) & 1:
                t = carrier_t0 + row_t
                for j in range(width):
                    if (<long long> floor((t + j) * k_c)) & 1:
                        px[r, j] = 1
    return out


def render_samples(pixels, int total_h, int total_v, int frames):
    """Emit one float32 sample per pixel slot; see _kernels_py.render_samples."""
    cdef unsigned char[:, ::1] px = np.ascontiguousarray(pixels, dtype=np.uint8)
    cdef int height = px.shape[0]
    cdef int width = px.shape[1]
    out = np.zeros((<long long> frames) * total_h * total_v, dtype=np.float32)
    cdef float[::1] samples = out
    # convert each pixel row once, then block-copy it into every frame
    cdef float[:, ::1] rows = np.zeros((height, width), dtype=np.float32)
    cdef long long base
    cdef int f, r, j
    with nogil:
        for r in range(height):
            for j in range(width):
                rows[r, j] = px[r, j]
        for f in range(frames):
            for r in range(height):
                base = ((<long long> f) * total_v + r) * total_h
                samples[base : base + width] = rows[r]
    return out
