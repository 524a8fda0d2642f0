"""Command-line interface.

Exit codes: 0 success, 1 operational error, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import channel_sim, experiments, pixelmap, rf_oracle, wav_io
from .channel_sim import ChannelParams
from .errors import RasterFmError
from .link_protocol import frame_raw, frame_structured
from .modem_rx import decode as rx_decode
from .modem_tx import synthesize
from .pixelmap import ToneMapSpec
from .stealth import BandPlan, MonitorTimeline, schedule_windows, validate_carrier
from .video_timing import resolve_mode


def _mode_from_arg(arg: str):
    if arg.strip().startswith("{"):
        return resolve_mode(json.loads(arg))
    return resolve_mode(arg)


def cmd_pixmap(args):
    mode = _mode_from_arg(args.mode)
    if args.dual:
        f_top, f_bottom = (float(v) for v in args.dual.split(","))
        pm = pixelmap.generate_dual_tone_map(mode, args.fc, f_top, f_bottom)
    else:
        if args.fd is None:
            print("pixmap: --fd is required unless --dual is given", file=sys.stderr)
            return 2
        pm = pixelmap.generate_tone_map(ToneMapSpec(args.fc, args.fd, mode))
    with open(args.output, "wb") as fh:
        fh.write(pixelmap.export_ppm(pm))
    return 0


def cmd_rfcheck(args):
    mode = _mode_from_arg(args.mode)
    with open(args.input, "rb") as fh:
        pm = pixelmap.import_ppm(fh.read())
    stream = rf_oracle.render_rf(pm, mode, frames=args.frames)
    if args.dump:
        stream.dump_raw(args.dump)
    half_band = rf_oracle.ENVELOPE_HALF_BAND_HZ
    carrier_hz, _ = rf_oracle.spectrum_peak(
        stream, (max(args.fc - half_band, 0.0), min(args.fc + half_band, stream.sample_rate / 2))
    )
    audio_hz = rf_oracle.envelope_demod(stream, args.fc)
    print(json.dumps({"carrier_peak_hz": carrier_hz, "audio_peak_hz": audio_hz}))
    return 0


def _read_input(path, binary: bool) -> bytes | str:
    mode = "rb" if binary else "r"
    with open(path, mode) as fh:
        return fh.read()


def cmd_encode(args):
    if args.protocol == "structured":
        if args.scheme != "dtmf":
            print("encode: the structured protocol runs over dtmf", file=sys.stderr)
            return 2
        data = _read_input(args.input, binary=True)
        events = frame_structured(data, hold_ms=args.hold, gap_ms=args.gap)
    else:
        binary = args.scheme == "dtmf"
        data = _read_input(args.input, binary=binary)
        events = frame_raw(data, scheme=args.scheme, hold_ms=args.hold, gap_ms=args.gap)
    wav_io.write_wav(args.output, synthesize(events))
    return 0


def cmd_decode(args):
    samples, rate = wav_io.read_wav(args.input)
    if rate != 44100:
        print(f"decode: expected 44100 Hz input, got {rate}", file=sys.stderr)
        return 1
    truth = None
    if args.truth:
        truth = _read_input(args.truth, binary=args.scheme != "afsk")
        if isinstance(truth, str):
            truth = truth.encode("ascii")
    result = rx_decode(
        samples, args.scheme, ground_truth=truth, hold_ms=args.hold, gap_ms=args.gap
    )
    with open(args.output, "wb") as fh:
        fh.write(result.data)
    report = result.report_dict()
    if args.dump_packets:
        report["packets"] = {str(k): v for k, v in sorted(result.packet_reports.items())}
    print(json.dumps(report))
    return 0


def cmd_simulate(args):
    samples, rate = wav_io.read_wav(args.input)
    params = ChannelParams(
        snr_db=args.snr,
        distance_m=args.distance,
        smear_coefficient=args.smear,
        band_limit=not args.no_band_limit,
        rng_seed=args.seed,
    )
    wav_io.write_wav(args.output, channel_sim.apply(samples, params, rate))
    return 0


def cmd_estimate(args):
    model = experiments.TimingModel(
        hold_ms=args.hold, gap_ms=args.gap, mode=args.protocol
    )
    seconds = experiments.estimate_time(args.size, model)
    if seconds >= 3600:
        human = f"{seconds / 3600:.1f} hour"
    elif seconds >= 60:
        human = f"{seconds / 60:.2f} min"
    else:
        human = f"{seconds:.2f} sec"
    print(json.dumps({"size_bytes": args.size, "protocol": args.protocol,
                      "seconds": seconds, "human": human}))
    return 0


def cmd_sweep(args):
    cfg = experiments.load_experiment_config(args.config)
    channel = cfg["channel"]
    common = dict(
        channel=channel,
        payload=cfg.get("payload_len", 64),
        trials=cfg.get("trials", 30),
        seed=cfg.get("seed", 0),
        scheme=cfg.get("scheme", "dtmf"),
    )
    if args.kind == "delay":
        report = experiments.sweep_delay(cfg["delays_ms"], **common)
    else:
        report = experiments.sweep_distance(cfg["distances_m"], **common)
    with open(args.output, "w") as fh:
        fh.write(report.to_csv())
    return 0


def cmd_schedule(args):
    with open(args.timeline) as fh:
        timeline = MonitorTimeline.from_config(json.load(fh))
    data = _read_input(args.input, binary=args.scheme == "dtmf")
    events = frame_raw(data, scheme=args.scheme, hold_ms=args.hold, gap_ms=args.gap)
    plan = schedule_windows(events, timeline)
    with open(args.output, "w") as fh:
        json.dump({"makespan_ms": plan.makespan_ms, "placements": plan.to_config()}, fh)
    return 0


def cmd_validate_carrier(args):
    verdict = validate_carrier(args.freq, BandPlan(args.plan, args.grid))
    print(json.dumps({"freq_hz": args.freq, "valid": verdict.valid, "reason": verdict.reason}))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rasterfm",
        description="Software modem and emanation simulator for video-raster FM tones",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pixmap", help="generate a tone pixel map as PPM")
    p.add_argument("--mode", required=True, help="preset name or inline JSON mode")
    p.add_argument("--fc", type=float, required=True, help="carrier frequency, Hz")
    p.add_argument("--fd", type=float, help="audio tone, Hz")
    p.add_argument("--dual", help="two tones 'top_hz,bottom_hz' for a split frame")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_pixmap)

    p = sub.add_parser("rfcheck", help="render a map and verify carrier/tone spectrally")
    p.add_argument("--in", dest="input", required=True, help="PPM pixel map")
    p.add_argument("--mode", required=True)
    p.add_argument("--fc", type=float, required=True)
    p.add_argument("--frames", type=int, default=4)
    p.add_argument("--dump", help="also dump the raw float32 sample stream here")
    p.set_defaults(func=cmd_rfcheck)

    p = sub.add_parser("encode", help="encode data to a WAV transmission")
    p.add_argument("--scheme", choices=["afsk", "dtmf"], default="dtmf")
    p.add_argument("--protocol", choices=["raw", "structured"], default="raw")
    p.add_argument("--hold", type=float, default=70.0)
    p.add_argument("--gap", type=float, default=5.0)
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("decode", help="decode a WAV transmission")
    p.add_argument("--scheme", choices=["afsk", "dtmf", "dense_afsk"], default="dtmf")
    p.add_argument("--hold", type=float, default=70.0)
    p.add_argument("--gap", type=float, default=5.0)
    p.add_argument("-i", "--input", required=True)
    p.add_argument("--truth", help="ground-truth file for success-rate accounting")
    p.add_argument("--dump-packets", action="store_true", help="include per-packet reports")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("simulate", help="impair a WAV through the channel model")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--snr", type=float, help="target SNR, dB")
    group.add_argument("--distance", type=float, help="path distance, m")
    p.add_argument("--smear", type=float, default=0.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--no-band-limit", action="store_true")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("estimate", help="transmission time for a payload size")
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--protocol", choices=["raw", "structured"], default="raw")
    p.add_argument("--hold", type=float, default=70.0)
    p.add_argument("--gap", type=float, default=5.0)
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("sweep", help="quality sweep to CSV")
    p.add_argument("kind", choices=["delay", "distance"])
    p.add_argument("--config", required=True, help="JSON experiment config")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("schedule", help="fit a transmission into monitor-off windows")
    p.add_argument("--timeline", required=True, help="JSON [[t_ms, 'on'|'off'], ...]")
    p.add_argument("--scheme", choices=["afsk", "dtmf"], default="dtmf")
    p.add_argument("--hold", type=float, default=70.0)
    p.add_argument("--gap", type=float, default=5.0)
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_schedule)

    p = sub.add_parser("validate-carrier", help="check a carrier against a band plan")
    p.add_argument("--freq", type=float, required=True, help="carrier frequency, Hz")
    p.add_argument("--plan", choices=["standard", "extended"], default="standard")
    p.add_argument("--grid", type=int, choices=[200, 50], default=200)
    p.set_defaults(func=cmd_validate_carrier)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (RasterFmError, OSError, ValueError, json.JSONDecodeError) as exc:
        print(f"rasterfm {args.command}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
