import json

import pytest

from rasterfm.channel_sim import ChannelParams
from rasterfm.experiments import (
    DEFAULT_CHANNEL,
    SweepReport,
    TimingModel,
    estimate_time,
    load_experiment_config,
    sweep_delay,
    sweep_distance,
    wilson_interval,
)
from rasterfm.link_protocol import frame_raw, frame_structured

TABLE_SECONDS = {
    # size: (raw seconds, structured seconds), from the published timing table
    10: (0.75, 1.2),
    100: (7.5, 10.65),
    1024: (76.8, 105.6),
    2048: (153.6, 211.2),
    8192: (614.4, 844.8),
    524288: (39321.6, 54067.2),
}


@pytest.mark.parametrize("size", sorted(TABLE_SECONDS))
def test_estimate_reference_values(size):
    raw, structured = TABLE_SECONDS[size]
    assert estimate_time(size, TimingModel(mode="raw")) == pytest.approx(raw)
    assert estimate_time(size, TimingModel(mode="structured")) == pytest.approx(structured)


@pytest.mark.parametrize("size", [0, 1, 10, 100, 1024, 8192])
def test_estimate_matches_framed_duration(size):
    data = bytes(size)
    raw_ms = sum(e.duration_ms for e in frame_raw(data))
    assert abs(estimate_time(size, TimingModel(mode="raw")) - raw_ms / 1000) <= 0.075
    st_ms = sum(e.duration_ms for e in frame_structured(data))
    assert abs(estimate_time(size, TimingModel(mode="structured")) - st_ms / 1000) <= 0.075


def test_timing_model_validation():
    with pytest.raises(Exception):
        TimingModel(mode="burst")


def test_wilson_interval_basics():
    low, high = wilson_interval(0, 0)
    assert (low, high) == (0.0, 1.0)
    low, high = wilson_interval(95, 100)
    assert low < 0.95 < high
    assert wilson_interval(100, 100)[1] == pytest.approx(1.0)


def test_sweep_clean_channel_all_delays_perfect():
    clean = ChannelParams(band_limit=False)
    report = sweep_delay([10, 30, 70], channel=clean, payload=24, trials=2, seed=1)
    assert report.rates() == [1.0, 1.0, 1.0]


def test_sweep_reproducible():
    a = sweep_delay([30, 70], channel=DEFAULT_CHANNEL, payload=16, trials=2, seed=9)
    b = sweep_delay([30, 70], channel=DEFAULT_CHANNEL, payload=16, trials=2, seed=9)
    assert a == b


def test_sweep_rows_sorted():
    report = sweep_delay([90, 10], channel=ChannelParams(band_limit=False), payload=8, trials=1, seed=0)
    assert [p.value for p in report.points] == [10.0, 90.0]


def test_sweep_distance_uses_path_loss():
    report = sweep_distance([0.5, 3.0], channel=DEFAULT_CHANNEL, payload=16, trials=2, seed=3)
    assert [p.value for p in report.points] == [0.5, 3.0]
    assert all(p.success_rate >= 0.9 for p in report.points)


def test_sweep_distance_non_increasing():
    # grid spans the path-loss cliff; allow one inversion outside the bands
    report = sweep_distance(
        [1.0, 30.0, 120.0, 250.0, 500.0], channel=DEFAULT_CHANNEL, payload=24, trials=8, seed=5
    )
    inversions = 0
    for near, far in zip(report.points, report.points[1:]):
        if far.success_rate > near.success_rate and far.ci_low > near.ci_high:
            inversions += 1
    assert inversions <= 1
    assert report.points[-1].success_rate < report.points[0].success_rate


def test_csv_shape():
    report = SweepReport("delay_ms", ())
    assert report.to_csv().splitlines()[0] == "delay_ms,trials,success_rate,ci_low,ci_high"


def test_config_loading(tmp_path):
    cfg_path = tmp_path / "exp.json"
    cfg_path.write_text(
        json.dumps(
            {
                "delays_ms": [10, 70],
                "channel": {"distance_m": 7.0, "smear_coefficient": 0.15},
                "trials": 3,
            }
        )
    )
    cfg = load_experiment_config(cfg_path)
    assert cfg["channel"] == ChannelParams(distance_m=7.0, smear_coefficient=0.15)
    assert cfg["delays_ms"] == [10, 70]
