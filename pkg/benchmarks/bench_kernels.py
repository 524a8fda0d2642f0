#!/usr/bin/env python3
"""Benchmark the compiled kernels against the numpy fallbacks.

Times the two hot paths (tone-map pixel fill, RF sample rendering) on
realistic workloads and prints a comparison table.

    python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import time

import numpy as np

from rasterfm import _kernels_py
from rasterfm.pixelmap import ToneMapSpec, generate_tone_map
from rasterfm.video_timing import PRESETS, pixel_clock

try:
    from rasterfm import _kernels as compiled
except ImportError:
    compiled = None


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def workloads():
    for preset, f_c, f_d, frames in [
        ("vga-640x480-60", 12e6, 2400.0, 4),
        ("xga-1024x768-60", 20e6, 2400.0, 2),
        ("tiny-64x64-60", 4e5, 8000.0, 60),
    ]:
        mode = PRESETS[preset]
        p_c = pixel_clock(mode)
        k_c, k_d = 2 * f_c / p_c, 2 * f_d / p_c
        fill_args = (mode.visible_h, mode.visible_v, mode.total_h, k_c, k_d)
        pixels = generate_tone_map(ToneMapSpec(f_c, f_d, mode)).pixels
        render_args = (pixels, mode.total_h, mode.total_v, frames)
        yield f"fill {preset}", "tone_map_pixels", fill_args
        yield f"render {preset} x{frames}", "render_samples", render_args


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=5, help="best-of-N timing")
    args = parser.parse_args()

    if compiled is None:
        print("compiled kernels not built (run `python setup.py build_ext --inplace`);")
        print("timing the numpy fallback only\n")

    header = f"{'workload':<28} {'numpy':>10} {'compiled':>10} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for label, name, call_args in workloads():
        py_fn = getattr(_kernels_py, name)
        t_py = best_of(lambda: py_fn(*call_args), args.repeat)
        if compiled is not None:
            c_fn = getattr(compiled, name)
            if not np.array_equal(py_fn(*call_args), c_fn(*call_args)):
                raise AssertionError(f"backend outputs differ for {label}")
            t_c = best_of(lambda: c_fn(*call_args), args.repeat)
            print(f"{label:<28} {t_py * 1e3:>8.2f}ms {t_c * 1e3:>8.2f}ms {t_py / t_c:>7.1f}x")
        else:
            print(f"{label:<28} {t_py * 1e3:>8.2f}ms {'-':>10} {'-':>8}")


if __name__ == "__main__":
    main()
