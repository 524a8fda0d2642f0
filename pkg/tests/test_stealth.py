import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rasterfm.errors import InvalidSpec, NoCapacity
from rasterfm.modem_tx import SymbolEvent
from rasterfm.stealth import (
    BandPlan,
    MonitorTimeline,
    schedule_windows,
    validate_carrier,
)


def events(n, hold=70.0, gap=5.0):
    return [SymbolEvent((1000.0,), hold, gap) for _ in range(n)]


def test_80mhz_extended_fine_grid_valid():
    assert validate_carrier(80e6, BandPlan("extended", 50)).valid


def test_80mhz_standard_rejected():
    verdict = validate_carrier(80e6, BandPlan("standard", 200))
    assert not verdict.valid
    assert "below" in verdict.reason


def test_off_grid_rejected():
    verdict = validate_carrier(90.025e6, BandPlan("extended", 50))
    assert not verdict.valid
    assert "off-grid" in verdict.reason


def test_grid_arithmetic_examples():
    assert validate_carrier(87.5e6, BandPlan("standard", 200)).valid
    assert validate_carrier(87.7e6, BandPlan("standard", 200)).valid
    assert not validate_carrier(87.6e6, BandPlan("standard", 200)).valid
    assert validate_carrier(87.6e6, BandPlan("standard", 50)).valid
    assert not validate_carrier(108.1e6, BandPlan("extended", 50)).valid


def test_unit_representation_invariance():
    # 80 MHz expressed via different unit conversions validates identically
    for freq in (80e6, 80_000 * 1e3, 80_000_000.0):
        assert validate_carrier(freq, BandPlan("extended", 50)).valid


def test_carrier_must_be_positive():
    with pytest.raises(InvalidSpec):
        validate_carrier(0.0, BandPlan())


def test_band_plan_validation():
    with pytest.raises(InvalidSpec):
        BandPlan("japanese", 200)
    with pytest.raises(InvalidSpec):
        BandPlan("standard", 100)


def test_timeline_validation():
    with pytest.raises(InvalidSpec):
        MonitorTimeline(((5.0, "off"),))  # must start at 0
    with pytest.raises(InvalidSpec):
        MonitorTimeline(((0.0, "off"), (10.0, "off")))  # must alternate
    with pytest.raises(InvalidSpec):
        MonitorTimeline(((0.0, "off"), (0.0, "on")))  # strictly increasing
    with pytest.raises(InvalidSpec):
        MonitorTimeline(((0.0, "dim"),))


def test_always_off_packs_back_to_back():
    timeline = MonitorTimeline(((0.0, "off"),))
    plan = schedule_windows(events(10), timeline)
    assert plan.makespan_ms == pytest.approx(750.0)
    assert [p.start_ms for p in plan.placements] == pytest.approx(
        [i * 75.0 for i in range(10)]
    )


def test_window_shorter_than_symbol_is_infeasible():
    timeline = MonitorTimeline(((0.0, "off"), (50.0, "on")))
    with pytest.raises(NoCapacity):
        schedule_windows(events(1), timeline)


def test_all_on_timeline_infeasible():
    timeline = MonitorTimeline(((0.0, "on"),))
    with pytest.raises(NoCapacity):
        schedule_windows(events(1), timeline)


def test_two_window_split_at_133():
    # off [0, 10 s] and [20 s, 30 s]: 10 s / 75 ms = 133.3 symbols per window
    timeline = MonitorTimeline(((0.0, "off"), (10_000.0, "on"), (20_000.0, "off"), (30_000.0, "on")))
    plan = schedule_windows(events(150), timeline)
    first = [p for p in plan.placements if p.end_ms <= 10_000.0]
    assert len(first) == 133
    assert plan.placements[133].start_ms == 20_000.0
    assert all(
        not (p.start_ms < 10_000.0 < p.end_ms) for p in plan.placements
    )
    assert plan.placements[-1].end_ms <= 30_000.0


def test_order_preserved_and_gapless():
    timeline = MonitorTimeline(((0.0, "off"), (1000.0, "on"), (2000.0, "off")))
    plan = schedule_windows(events(20), timeline)
    indices = [p.index for p in plan.placements]
    assert indices == sorted(indices)
    for prev, cur in zip(plan.placements, plan.placements[1:]):
        assert cur.start_ms in (prev.end_ms, 2000.0)


timelines = st.lists(
    st.floats(min_value=1.0, max_value=5000.0), min_size=1, max_size=8
).map(
    lambda gaps: MonitorTimeline(
        tuple(
            (float(sum(gaps[:i])), "off" if i % 2 == 0 else "on")
            for i in range(len(gaps))
        )
    )
)


@settings(max_examples=60, deadline=None)
@given(timelines, st.integers(1, 40))
def test_no_placement_overlaps_on_period(timeline, n):
    try:
        plan = schedule_windows(events(n, hold=40.0, gap=5.0), timeline)
    except NoCapacity:
        off_total = sum(
            (end - start) for start, end in timeline.off_windows() if end != float("inf")
        )
        has_infinite = any(end == float("inf") for _, end in timeline.off_windows())
        assert not has_infinite
        return
    for p in plan.placements:
        assert timeline.is_off(p.start_ms)
        assert timeline.is_off(p.end_ms - 1e-9)
        for t, state in timeline.events:
            if state == "on":
                assert not (p.start_ms < t < p.end_ms)
