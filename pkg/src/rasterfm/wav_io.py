"""RIFF WAVE I/O: PCM, mono, 16-bit signed little-endian."""

from __future__ import annotations

import wave

import numpy as np

from .constants import SAMPLE_RATE


def write_wav(path, samples: np.ndarray, sample_rate: int = SAMPLE_RATE) -> None:
    data = np.asarray(samples, dtype="<i2")
    with wave.open(str(path), "wb") as wf:
        wf.setnchannels(1)
        wf.setsampwidth(2)
        wf.setframerate(sample_rate)
        wf.writeframes(data.tobytes())


def read_wav(path) -> tuple[np.ndarray, int]:
    with wave.open(str(path), "rb") as wf:
        if wf.getnchannels() != 1 or wf.getsampwidth() != 2:
            raise ValueError(
                f"{path}: expected mono 16-bit PCM, got "
                f"{wf.getnchannels()} channel(s) x {8 * wf.getsampwidth()} bit"
            )
        rate = wf.getframerate()
        raw = wf.readframes(wf.getnframes())
    return np.frombuffer(raw, dtype="<i2"), rate
