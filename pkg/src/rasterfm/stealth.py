"""Operational hiding: transmit only while the monitor is off, and keep the
carrier on a band/grid that ordinary receivers will not tune.

The monitor hardware side (DDC/CI polling, power control) is abstracted
into a timeline of on/off states; this module models the gating policy.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidSpec, NoCapacity

STANDARD_BAND_HZ = (87.5e6, 108e6)
EXTENDED_BAND_HZ = (76e6, 108e6)


@dataclass(frozen=True)
class BandPlan:
    """FM band plus tuning grid, anchored at the band's lower edge."""

    plan: str = "standard"  # "standard" | "extended"
    tuning_grid_khz: int = 200  # 200 (default) | 50 (fine)

    def __post_init__(self):
        if self.plan not in ("standard", "extended"):
            raise InvalidSpec(f"unknown band plan {self.plan!r}")
        if self.tuning_grid_khz not in (200, 50):
            raise InvalidSpec(f"tuning grid must be 200 or 50 kHz, got {self.tuning_grid_khz}")

    @property
    def band_hz(self) -> tuple[float, float]:
        return STANDARD_BAND_HZ if self.plan == "standard" else EXTENDED_BAND_HZ


@dataclass(frozen=True)
class CarrierVerdict:
    valid: bool
    reason: str | None = None

    def __bool__(self):
        return self.valid


def validate_carrier(freq_hz: float, plan: BandPlan) -> CarrierVerdict:
    """Valid iff the carrier sits inside the plan's band and on its grid."""
    if freq_hz <= 0:
        raise InvalidSpec(f"carrier {freq_hz} Hz must be positive")
    low, high = plan.band_hz
    if freq_hz < low:
        return CarrierVerdict(False, f"{freq_hz / 1e6:.4g} MHz below the {low / 1e6:.1f} MHz band edge")
    if freq_hz > high:
        return CarrierVerdict(False, f"{freq_hz / 1e6:.4g} MHz above the {high / 1e6:.1f} MHz band edge")
    grid = plan.tuning_grid_khz * 1e3
    steps = (freq_hz - low) / grid
    if abs(steps - round(steps)) > 1e-6:
        remainder = (freq_hz - low) % grid
        return CarrierVerdict(
            False,
            f"off-grid: {remainder / 1e3:.4g} kHz remainder on the {plan.tuning_grid_khz} kHz grid",
        )
    return CarrierVerdict(True)


@dataclass(frozen=True)
class MonitorTimeline:
    """Alternating on/off states; the first event (at t=0) is the start state."""

    events: tuple[tuple[float, str], ...]

    def __post_init__(self):
        if not self.events:
            raise InvalidSpec("timeline needs at least the starting state")
        if self.events[0][0] != 0:
            raise InvalidSpec("first timeline event must be at t=0")
        last_t = -1.0
        last_state = None
        for t, state in self.events:
            if state not in ("on", "off"):
                raise InvalidSpec(f"timeline state must be 'on' or 'off', got {state!r}")
            if t <= last_t:
                raise InvalidSpec("timeline timestamps must be strictly increasing")
            if state == last_state:
                raise InvalidSpec("timeline states must alternate")
            last_t, last_state = t, state

    @classmethod
    def from_config(cls, entries) -> "MonitorTimeline":
        return cls(tuple((float(t), str(state)) for t, state in entries))

    def off_windows(self):
        """Yield (start_ms, end_ms) off intervals; the last may be unbounded."""
        for i, (t, state) in enumerate(self.events):
            if state == "off":
                end = self.events[i + 1][0] if i + 1 < len(self.events) else float("inf")
                yield (t, end)

    def is_off(self, t_ms: float) -> bool:
        state = "on"
        for t, s in self.events:
            if t <= t_ms:
                state = s
            else:
                break
        return state == "off"


@dataclass(frozen=True)
class SymbolPlacement:
    index: int
    start_ms: float
    end_ms: float


@dataclass(frozen=True)
class SchedulePlan:
    placements: tuple[SymbolPlacement, ...]
    makespan_ms: float

    def to_config(self) -> list:
        return [[p.index, p.start_ms, p.end_ms] for p in self.placements]


def schedule_windows(symbols, timeline: MonitorTimeline) -> SchedulePlan:
    """Place each symbol's hold+gap interval entirely inside an off window.

    Symbols queue in order, gapless within a window; none may straddle a
    window edge (a truncated symbol would decode ambiguously).
    """
    durations = [s.hold_ms + s.gap_ms for s in symbols]
    placements = []
    windows = timeline.off_windows()
    try:
        win_start, win_end = next(windows)
    except StopIteration:
        raise NoCapacity("timeline has no off windows") from None
    cursor = win_start
    for index, duration in enumerate(durations):
        while cursor + duration > win_end:
            try:
                win_start, win_end = next(windows)
            except StopIteration:
                raise NoCapacity(
                    f"off-time exhausted at symbol {index} of {len(durations)}"
                ) from None
            cursor = win_start
        placements.append(SymbolPlacement(index, cursor, cursor + duration))
        cursor += duration
    makespan = placements[-1].end_ms if placements else 0.0
    return SchedulePlan(tuple(placements), makespan)
