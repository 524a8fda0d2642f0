"""Audio-domain impairment model for the simulated path.

Stands in for everything between the display cable and the phone's recorded
audio: distance (as SNR via log-distance path loss), the receiver's pass
band, and the receiver DSP's habit of bleeding adjacent frequencies into
each other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.signal import get_window

from .constants import (
    AUDIO_BAND_HIGH_HZ,
    AUDIO_BAND_LOW_HZ,
    CHUNK_HOP,
    CHUNK_SIZE,
    SAMPLE_RATE,
)
from .errors import InvalidSpec


@dataclass(frozen=True)
class ChannelParams:
    """Impairment settings; distance maps to SNR when snr_db is unset.

    With snr_db and distance_m both None the channel adds no noise.
    """

    snr_db: float | None = None
    distance_m: float | None = None
    path_loss_exponent: float = 2.0
    reference_snr_db: float = 40.0  # at 1 m
    band_limit: bool = True
    smear_coefficient: float = 0.0
    rng_seed: int = 0

    def __post_init__(self):
        if not 0.0 <= self.smear_coefficient <= 1.0:
            raise InvalidSpec(f"smear_coefficient {self.smear_coefficient} not in [0, 1]")
        if self.distance_m is not None and self.distance_m <= 0:
            raise InvalidSpec(f"distance {self.distance_m} m must be positive")

    def effective_snr_db(self) -> float | None:
        if self.snr_db is not None:
            return self.snr_db
        if self.distance_m is not None:
            return distance_to_snr(self.distance_m, self)
        return None


def distance_to_snr(distance_m: float, params: ChannelParams) -> float:
    """Log-distance path loss: reference SNR minus 10*n*log10(d / 1 m)."""
    if distance_m <= 0:
        raise InvalidSpec(f"distance {distance_m} m must be positive")
    return params.reference_snr_db - 10.0 * params.path_loss_exponent * math.log10(
        distance_m
    )


def _band_limit(x: np.ndarray, sample_rate: int) -> np.ndarray:
    spectrum = np.fft.rfft(x)
    freqs = np.fft.rfftfreq(len(x), 1.0 / sample_rate)
    spectrum[(freqs < AUDIO_BAND_LOW_HZ) | (freqs > AUDIO_BAND_HIGH_HZ)] = 0.0
    return np.fft.irfft(spectrum, n=len(x))


def _smear(x: np.ndarray, coefficient: float) -> np.ndarray:
    """STFT-domain leakage: each ~43 Hz bin gives coefficient/2 to each
    neighbor, mimicking the receiver DSP merging adjacent tones."""
    kernel = np.array([coefficient / 2.0, 1.0 - coefficient, coefficient / 2.0])
    window = get_window("hann", CHUNK_SIZE, fftbins=True)
    pad = CHUNK_SIZE
    padded = np.concatenate([np.zeros(pad), x, np.zeros(pad + CHUNK_SIZE)])
    out = np.zeros_like(padded)
    # periodic Hann at 50% hop sums to 1, so plain overlap-add reconstructs
    for start in range(0, len(padded) - CHUNK_SIZE + 1, CHUNK_HOP):
        frame = padded[start : start + CHUNK_SIZE] * window
        bins = np.fft.rfft(frame)
        bins = np.convolve(bins, kernel, mode="same")
        out[start : start + CHUNK_SIZE] += np.fft.irfft(bins, n=CHUNK_SIZE)
    return out[pad : pad + len(x)]


def apply(pcm: np.ndarray, params: ChannelParams, sample_rate: int = SAMPLE_RATE) -> np.ndarray:
    """Impair a 16-bit PCM stream; returns 16-bit PCM.

    Identical params and seed give bit-identical output.  The configuration
    with noise off, band limit off, and smear 0 returns the input unchanged.
    """
    snr_db = params.effective_snr_db()
    if snr_db is None and not params.band_limit and params.smear_coefficient == 0.0:
        return np.array(pcm, dtype=np.int16, copy=True)

    x = np.asarray(pcm, dtype=np.float64) / 32768.0
    if params.band_limit:
        x = _band_limit(x, sample_rate)
    if params.smear_coefficient > 0.0:
        x = _smear(x, params.smear_coefficient)
    if snr_db is not None and len(x):
        rng = np.random.default_rng(params.rng_seed)
        signal_rms = float(np.sqrt(np.mean(x**2)))
        noise_rms = signal_rms / (10.0 ** (snr_db / 20.0))
        x = x + rng.normal(0.0, noise_rms, size=len(x))
    return np.clip(np.round(x * 32768.0), -32768, 32767).astype(np.int16)
