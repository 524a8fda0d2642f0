import pytest
from hypothesis import given
from hypothesis import strategies as st

from rasterfm.errors import InvalidSpec
from rasterfm.video_timing import PRESETS, DisplayMode, pixel_clock, resolve_mode


def test_degenerate_identity():
    mode = DisplayMode(1, 0, 1, 0, 1)
    assert pixel_clock(mode) == 1


def test_vga_pixel_clock():
    # 800 * 525 * 60, the standard desktop timing totals
    assert pixel_clock(PRESETS["vga-640x480-60"]) == 25_200_000


def test_xga_pixel_clock():
    assert pixel_clock(PRESETS["xga-1024x768-60"]) == 64_995_840


def test_totals_derived():
    mode = PRESETS["vga-640x480-60"]
    assert mode.total_h == 800
    assert mode.total_v == 525
    assert mode.line_rate_hz == 31_500


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(visible_h=0, blank_h=0, visible_v=1, blank_v=0, refresh_hz=60),
        dict(visible_h=1, blank_h=-1, visible_v=1, blank_v=0, refresh_hz=60),
        dict(visible_h=1, blank_h=0, visible_v=0, blank_v=0, refresh_hz=60),
        dict(visible_h=1, blank_h=0, visible_v=1, blank_v=-2, refresh_hz=60),
        dict(visible_h=1, blank_h=0, visible_v=1, blank_v=0, refresh_hz=0),
    ],
)
def test_invalid_modes_rejected(kwargs):
    with pytest.raises(InvalidSpec):
        DisplayMode(**kwargs)


mode_fields = st.builds(
    DisplayMode,
    visible_h=st.integers(1, 4096),
    blank_h=st.integers(0, 1024),
    visible_v=st.integers(1, 4096),
    blank_v=st.integers(0, 1024),
    refresh_hz=st.integers(1, 240),
)


@given(mode_fields)
def test_refresh_recoverable_exactly(mode):
    assert pixel_clock(mode) / (mode.total_h * mode.total_v) == mode.refresh_hz


@given(mode_fields, st.integers(1, 64))
def test_monotone_in_each_total(mode, bump):
    base = pixel_clock(mode)
    wider = DisplayMode(mode.visible_h + bump, mode.blank_h, mode.visible_v, mode.blank_v, mode.refresh_hz)
    taller = DisplayMode(mode.visible_h, mode.blank_h, mode.visible_v + bump, mode.blank_v, mode.refresh_hz)
    faster = DisplayMode(mode.visible_h, mode.blank_h, mode.visible_v, mode.blank_v, mode.refresh_hz + bump)
    assert pixel_clock(wider) > base
    assert pixel_clock(taller) > base
    assert pixel_clock(faster) > base


def test_resolve_mode_forms():
    cfg = {"visible_h": 640, "blank_h": 160, "visible_v": 480, "blank_v": 45, "refresh_hz": 60}
    assert resolve_mode(cfg) == PRESETS["vga-640x480-60"]
    assert resolve_mode("vga-640x480-60") == PRESETS["vga-640x480-60"]
    assert resolve_mode(PRESETS["tiny-64x64-60"]) is PRESETS["tiny-64x64-60"]
    with pytest.raises(InvalidSpec):
        resolve_mode("svga-800x600-60")
    with pytest.raises(InvalidSpec):
        resolve_mode({"visible_h": 640})
