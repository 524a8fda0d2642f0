"""Pixel-map generation and analysis.

A frame of alternating black/white horizontal stripes, rendered at pixel
clock rate, radiates a carrier keyed on and off at an audio rate.  The inner
pixel alternation sets the carrier frequency f_c; the stripe alternation
down the rows sets the audio tone f_d.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .constants import AUDIO_BAND_HIGH_HZ, AUDIO_BAND_LOW_HZ
from .errors import InvalidSpec, NoPattern
from .video_timing import DisplayMode, pixel_clock


@dataclass(eq=False)
class PixelMap:
    """A monochrome frame: row-major 0/1 luminance, uint8."""

    width: int
    height: int
    pixels: np.ndarray = field(repr=False)

    def __post_init__(self):
        self.pixels = np.asarray(self.pixels, dtype=np.uint8)
        if self.pixels.shape != (self.height, self.width):
            raise InvalidSpec(
                f"pixel array shape {self.pixels.shape} does not match "
                f"{self.height}x{self.width}"
            )
        if self.pixels.max(initial=0) > 1:
            raise InvalidSpec("pixels must be 0 (black) or 1 (white)")

    def matches(self, mode: DisplayMode) -> bool:
        return self.width == mode.visible_h and self.height == mode.visible_v

    def row_activity(self) -> np.ndarray:
        """Boolean per row: does the row contain any white pixel."""
        return self.pixels.any(axis=1)

    def __eq__(self, other):
        return (
            isinstance(other, PixelMap)
            and self.width == other.width
            and self.height == other.height
            and np.array_equal(self.pixels, other.pixels)
        )


@dataclass(frozen=True)
class ToneMapSpec:
    """Carrier + audio tone + mode for a single-tone stripe frame."""

    f_c: float
    f_d: float
    mode: DisplayMode

    def __post_init__(self):
        if not AUDIO_BAND_LOW_HZ <= self.f_d <= AUDIO_BAND_HIGH_HZ:
            raise InvalidSpec(
                f"f_d={self.f_d} Hz outside the audio band "
                f"[{AUDIO_BAND_LOW_HZ:.0f}, {AUDIO_BAND_HIGH_HZ:.0f}]"
            )
        p_c = pixel_clock(self.mode)
        if not 0 < self.f_c <= 2 * p_c:
            raise InvalidSpec(
                f"f_c={self.f_c} Hz outside (0, 2*pixel_clock={2 * p_c:.0f}]"
            )


def _coefficients(f_c: float, f_d: float, mode: DisplayMode) -> tuple[float, float]:
    p_c = pixel_clock(mode)
    return 2.0 * f_c / p_c, 2.0 * f_d / p_c


def generate_tone_map(spec: ToneMapSpec) -> PixelMap:
    """Stripe frame keying carrier f_c at audio rate f_d.

    The slot index t advances through blanking as well as visible pixels, so
    carrier phase is continuous across lines; the stripe on/off decision is
    made once per row from the row's starting t.
    """
    mode = spec.mode
    k_c, k_d = _coefficients(spec.f_c, spec.f_d, mode)
    pixels = kernels.tone_map_pixels(
        mode.visible_h, mode.visible_v, mode.total_h, k_c, k_d
    )
    return PixelMap(mode.visible_h, mode.visible_v, pixels)


def generate_dual_tone_map(
    mode: DisplayMode, f_c: float, f_top: float, f_bottom: float
) -> PixelMap:
    """Split-screen frame: top half keyed at f_top, bottom half at f_bottom.

    Stripe phase restarts at each half's first row; carrier phase stays
    continuous through the whole frame.
    """
    for f in (f_top, f_bottom):
        if not AUDIO_BAND_LOW_HZ <= f <= AUDIO_BAND_HIGH_HZ:
            raise InvalidSpec(f"tone {f} Hz outside the audio band")
    p_c = pixel_clock(mode)
    if not 0 < f_c <= 2 * p_c:
        raise InvalidSpec(f"f_c={f_c} Hz outside (0, 2*pixel_clock]")

    k_c, k_top = _coefficients(f_c, f_top, mode)
    _, k_bottom = _coefficients(f_c, f_bottom, mode)
    split = mode.visible_v // 2
    top = kernels.tone_map_pixels(
        mode.visible_h, split, mode.total_h, k_c, k_top
    )
    bottom = kernels.tone_map_pixels(
        mode.visible_h,
        mode.visible_v - split,
        mode.total_h,
        k_c,
        k_bottom,
        carrier_t0=split * mode.total_h,
    )
    return PixelMap(mode.visible_h, mode.visible_v, np.vstack([top, bottom]))


def estimate_tone_frequency(
    pixmap: PixelMap,
    mode: DisplayMode,
    row_range: tuple[int, int] | None = None,
) -> float:
    """Recover the audio tone from a stripe frame's geometry.

    The distance in rows between successive stripe onsets is one full tone
    period: period_rows * total_h slots = pixel_clock / f_d.  The median
    observed distance absorbs the +/-1-row quantization of the stripe edges
    and anchors a multi-period refinement (first-to-last onset span divided
    by the period count), which pins the estimate well inside 5% even where
    a single quantized distance would not.
    """
    if row_range is None:
        activity = pixmap.row_activity()
    else:
        activity = pixmap.pixels[row_range[0] : row_range[1]].any(axis=1)
    if not activity.any():
        raise NoPattern("frame is uniform (no white pixels)")

    onsets = np.flatnonzero(activity[1:] & ~activity[:-1]) + 1
    if len(onsets) < 2:
        raise NoPattern("no repeated stripe pattern found")

    distances = np.diff(onsets)
    median_period = float(np.median(distances))
    # Distances within +/-1 row (or 25%) of the median are single periods
    # that floor() quantized; anything farther out is a skipped onset and
    # spans round(d / median) periods.
    tolerance = max(1.0, 0.25 * median_period)
    if np.all(np.abs(distances - median_period) <= tolerance):
        periods = len(distances)
    else:
        periods = int(np.round(distances / median_period).sum())
    if periods < 1:
        raise NoPattern("stripe onsets do not form a periodic pattern")
    period_rows = (onsets[-1] - onsets[0]) / periods
    return pixel_clock(mode) / (period_rows * mode.total_h)


def export_ppm(pixmap: PixelMap) -> bytes:
    """Binary portable pixmap (P6, maxval 255): black (0,0,0), white (255,255,255)."""
    header = f"P6\n{pixmap.width} {pixmap.height}\n255\n".encode("ascii")
    rgb = np.repeat(pixmap.pixels, 3).astype(np.uint8) * np.uint8(255)
    return header + rgb.tobytes()


def import_ppm(data: bytes) -> PixelMap:
    """Inverse of export_ppm; accepts any conformant binary P6 with maxval 255."""
    fields, pos = [], 0
    while len(fields) < 4:
        if pos >= len(data):
            raise InvalidSpec("truncated PPM header")
        ch = data[pos : pos + 1]
        if ch == b"#":
            pos = data.index(b"\n", pos) + 1
        elif ch.isspace():
            pos += 1
        else:
            end = pos
            while end < len(data) and not data[end : end + 1].isspace():
                end += 1
            fields.append(data[pos:end])
            pos = end
    pos += 1  # single whitespace after maxval
    if fields[0] != b"P6":
        raise InvalidSpec(f"not a binary PPM (magic {fields[0]!r})")
    width, height, maxval = int(fields[1]), int(fields[2]), int(fields[3])
    if maxval != 255:
        raise InvalidSpec(f"unsupported maxval {maxval}")
    raster = np.frombuffer(data, dtype=np.uint8, offset=pos)
    if raster.size != width * height * 3:
        raise InvalidSpec(
            f"raster has {raster.size} bytes, expected {width * height * 3}"
        )
    rgb = raster.reshape(height, width, 3)
    white = (rgb == 255).all(axis=2)
    black = (rgb == 0).all(axis=2)
    if not (white | black).all():
        raise InvalidSpec("PPM contains non-monochrome pixels")
    return PixelMap(width, height, white.astype(np.uint8))
