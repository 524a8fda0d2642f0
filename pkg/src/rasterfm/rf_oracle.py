"""Brute-force validation path for the emission model.

Renders a pixel map to one sample per pixel slot at pixel-clock rate and
checks, spectrally, that the intended carrier and audio tone are really
there.  This pipeline shares nothing with the audio receiver: it is the
independent route the generator is verified against.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy import signal as sp_signal

from . import kernels
from .constants import AUDIO_BAND_HIGH_HZ, AUDIO_BAND_LOW_HZ, SAMPLE_RATE
from .errors import EmptyBand, NoTone
from .pixelmap import PixelMap
from .video_timing import DisplayMode, pixel_clock

# Half-width of the band extracted around the carrier before envelope
# detection; wide enough for f_d sidebands plus line-rate images, which the
# subsequent decimation filter removes.
ENVELOPE_HALF_BAND_HZ = 50e3

# Minimum peak-over-median ratio for a tone to count as present (6 dB).
TONE_THRESHOLD = 2.0


@dataclass(eq=False)
class RfStream:
    """Sampled emanation: amplitude per pixel slot at pixel-clock rate."""

    samples: np.ndarray = field(repr=False)
    sample_rate: float
    frames_rendered: int

    @property
    def samples_per_frame(self) -> int:
        return len(self.samples) // self.frames_rendered

    def dump_raw(self, path) -> None:
        """Raw 32-bit float little-endian dump for external inspection."""
        np.asarray(self.samples, dtype="<f4").tofile(path)


def render_rf(pixmap: PixelMap, mode: DisplayMode, frames: int = 1) -> RfStream:
    """One sample per pixel slot in raster order; blanking slots emit 0.0."""
    if frames < 1:
        raise ValueError("frames must be >= 1")
    if not pixmap.matches(mode):
        raise ValueError(
            f"map {pixmap.width}x{pixmap.height} does not match mode "
            f"{mode.visible_h}x{mode.visible_v}"
        )
    samples = kernels.render_samples(pixmap.pixels, mode.total_h, mode.total_v, frames)
    return RfStream(samples, float(pixel_clock(mode)), frames)


def spectrum_peak(stream: RfStream, band: tuple[float, float]) -> tuple[float, float]:
    """Strongest spectral line within [low, high] Hz.

    Transform length is one frame of samples; multi-frame streams average
    per-frame magnitude spectra, so the bin width is exactly the refresh
    rate.  Returns (frequency, magnitude) with magnitude normalized to
    amplitude units (2|X|/N), 0.0 for an all-zero stream.
    """
    low, high = band
    if low < 0 or high > stream.sample_rate / 2 or low > high:
        raise EmptyBand(
            f"band [{low}, {high}] not within [0, {stream.sample_rate / 2:.0f}]"
        )
    n = stream.samples_per_frame
    per_frame = stream.samples[: n * stream.frames_rendered].reshape(
        stream.frames_rendered, n
    )
    mags = np.abs(np.fft.rfft(per_frame, axis=1)).mean(axis=0)
    freqs = np.fft.rfftfreq(n, 1.0 / stream.sample_rate)
    mask = (freqs >= low) & (freqs <= high)
    if not mask.any():
        raise EmptyBand(f"no spectrum bin falls inside [{low}, {high}] Hz")
    idx = np.flatnonzero(mask)
    peak = idx[np.argmax(mags[idx])]
    return float(freqs[peak]), float(2.0 * mags[peak] / n)


def envelope_audio(
    stream: RfStream, f_c: float, audio_rate: int = SAMPLE_RATE
) -> np.ndarray:
    """Amplitude envelope of the +/-50 kHz band around f_c, at audio rate.

    Band-selects the positive spectrum around the carrier (analytic signal),
    takes the magnitude, and FFT-resamples down to the audio rate, which
    brick-walls everything above audio Nyquist (line-rate images included).
    """
    x = np.asarray(stream.samples, dtype=np.float64)
    n = len(x)
    spectrum = np.fft.fft(x)
    freqs = np.fft.fftfreq(n, 1.0 / stream.sample_rate)
    lo = max(f_c - ENVELOPE_HALF_BAND_HZ, 0.0)
    hi = f_c + ENVELOPE_HALF_BAND_HZ
    keep = (freqs >= lo) & (freqs <= hi)
    analytic_spec = np.zeros_like(spectrum)
    analytic_spec[keep] = 2.0 * spectrum[keep]
    envelope = np.abs(np.fft.ifft(analytic_spec))
    n_audio = int(round(n * audio_rate / stream.sample_rate))
    return sp_signal.resample(envelope, n_audio)


def _band_peak(
    magnitudes: np.ndarray, freqs: np.ndarray, band: tuple[float, float]
) -> tuple[int, float]:
    mask = (freqs >= band[0]) & (freqs <= band[1])
    if not mask.any():
        raise EmptyBand(f"no audio bin inside [{band[0]}, {band[1]}] Hz")
    idx = np.flatnonzero(mask)
    peak = idx[np.argmax(magnitudes[idx])]
    median = float(np.median(magnitudes[idx]))
    return int(peak), median


def audio_band_peaks(
    audio: np.ndarray,
    band: tuple[float, float] = (AUDIO_BAND_LOW_HZ, AUDIO_BAND_HIGH_HZ),
    count: int = 1,
    min_separation_hz: float = 200.0,
    audio_rate: int = SAMPLE_RATE,
) -> list[tuple[float, float]]:
    """Up to `count` distinct spectral peaks of an audio signal, strongest first."""
    x = np.asarray(audio, dtype=np.float64)
    mags = np.abs(np.fft.rfft(x - x.mean()))
    freqs = np.fft.rfftfreq(len(x), 1.0 / audio_rate)
    peaks = []
    work = mags.copy()
    for _ in range(count):
        idx, _ = _band_peak(work, freqs, band)
        if work[idx] <= 0:
            break
        peaks.append((float(freqs[idx]), float(mags[idx])))
        clear = np.abs(freqs - freqs[idx]) < min_separation_hz
        work[clear] = 0.0
    return peaks


def envelope_demod(
    stream: RfStream,
    f_c: float,
    audio_band: tuple[float, float] = (AUDIO_BAND_LOW_HZ, AUDIO_BAND_HIGH_HZ),
) -> float:
    """Recover the keying tone: envelope at f_c, then the audio-band peak.

    Raises NoTone when the peak does not clear 6 dB over the median bin.
    """
    if not 0 <= f_c <= stream.sample_rate / 2:
        raise ValueError(f"f_c={f_c} outside [0, {stream.sample_rate / 2:.0f}]")
    audio = envelope_audio(stream, f_c)
    mags = np.abs(np.fft.rfft(audio - audio.mean()))
    freqs = np.fft.rfftfreq(len(audio), 1.0 / SAMPLE_RATE)
    peak, median = _band_peak(mags, freqs, audio_band)
    if mags[peak] < TONE_THRESHOLD * median or mags[peak] <= 0:
        raise NoTone(
            f"strongest audio bin ({freqs[peak]:.0f} Hz) is under 6 dB over the median"
        )
    return float(freqs[peak])
