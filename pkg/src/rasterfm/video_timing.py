"""Display-adapter timing model.

Every emanation figure in this package derives from one number, the pixel
clock: the rate at which pixel slots (visible or blanking) are driven onto
the display cable.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidSpec


@dataclass(frozen=True)
class DisplayMode:
    """Video timing: visible geometry plus total blanking per axis.

    Blanking is stored as one total per axis (sync plus front/back porch);
    nothing downstream ever needs the split.
    """

    visible_h: int
    blank_h: int
    visible_v: int
    blank_v: int
    refresh_hz: float

    def __post_init__(self):
        if self.visible_h < 1 or self.visible_v < 1:
            raise InvalidSpec(f"visible geometry must be >= 1x1, got {self.visible_h}x{self.visible_v}")
        if self.blank_h < 0 or self.blank_v < 0:
            raise InvalidSpec("blanking cannot be negative")
        if self.refresh_hz <= 0:
            raise InvalidSpec(f"refresh rate must be positive, got {self.refresh_hz}")

    @property
    def total_h(self) -> int:
        return self.visible_h + self.blank_h

    @property
    def total_v(self) -> int:
        return self.visible_v + self.blank_v

    @property
    def line_rate_hz(self) -> float:
        """Scan lines per second (the horizontal sync rate)."""
        return self.total_v * self.refresh_hz

    @classmethod
    def from_config(cls, cfg: dict) -> "DisplayMode":
        """Build a mode from a JSON-config dict ({visible_h, blank_h, ...})."""
        try:
            return cls(
                visible_h=int(cfg["visible_h"]),
                blank_h=int(cfg["blank_h"]),
                visible_v=int(cfg["visible_v"]),
                blank_v=int(cfg["blank_v"]),
                refresh_hz=float(cfg["refresh_hz"]),
            )
        except KeyError as exc:
            raise InvalidSpec(f"display mode config missing field {exc}") from None


def pixel_clock(mode: DisplayMode) -> float:
    """Pixel slots per second: total_h * total_v * refresh rate.

    Integer-exact when the mode's fields are integers (refresh included).
    """
    return mode.total_h * mode.total_v * mode.refresh_hz


# Named presets usable anywhere a mode is accepted.  vga and xga follow the
# standard 60 Hz monitor timings.  tiny is a test-scale mode: 64x64 visible
# with oversized vertical blanking so its line rate (24 kHz) still clears
# twice the 11 kHz top of the audio band while a frame stays under 32k slots.
PRESETS = {
    "vga-640x480-60": DisplayMode(640, 160, 480, 45, 60),
    "xga-1024x768-60": DisplayMode(1024, 320, 768, 38, 60),
    "tiny-64x64-60": DisplayMode(64, 16, 64, 336, 60),
}


def resolve_mode(spec) -> DisplayMode:
    """Accept a preset name, a config dict, or a DisplayMode."""
    if isinstance(spec, DisplayMode):
        return spec
    if isinstance(spec, str):
        try:
            return PRESETS[spec]
        except KeyError:
            raise InvalidSpec(
                f"unknown mode preset {spec!r}; known presets: {', '.join(sorted(PRESETS))}"
            ) from None
    if isinstance(spec, dict):
        return DisplayMode.from_config(spec)
    raise InvalidSpec(f"cannot interpret {spec!r} as a display mode")
