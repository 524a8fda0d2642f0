"""Transmit side of the audio modem.

Maps symbols to tones (A-FSK single-tone, DTMF dual-tone, plus the dense
256-tone alphabet kept for the comparative failure experiment) and renders
symbol event sequences to 16-bit PCM as the FM receiver would output them.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .constants import (
    AUDIO_BAND_HIGH_HZ,
    AUDIO_BAND_LOW_HZ,
    DEFAULT_GAP_MS,
    DEFAULT_HOLD_MS,
    DTMF_COL_HIGH_HZ,
    DTMF_COL_LOW_HZ,
    DTMF_ROW_HIGH_HZ,
    DTMF_ROW_LOW_HZ,
    SAMPLE_RATE,
)
from .errors import InvalidSpec, UnsupportedCharacter

# Tone amplitudes leave headroom: 0.9 full scale for one tone, split for two.
SINGLE_TONE_AMPLITUDE = 0.9
DUAL_TONE_AMPLITUDE = 0.45
RAMP_MS = 2.0


@dataclass(frozen=True)
class SymbolEvent:
    """One on-air symbol: one or two tones, a hold, a trailing gap."""

    tones: tuple[float, ...]
    hold_ms: float
    gap_ms: float

    def __post_init__(self):
        if not 1 <= len(self.tones) <= 2:
            raise InvalidSpec("a symbol carries one or two tones")
        if self.hold_ms <= 0 or self.gap_ms < 0:
            raise InvalidSpec("hold must be positive and gap non-negative")
        for tone in self.tones:
            if not AUDIO_BAND_LOW_HZ <= tone <= AUDIO_BAND_HIGH_HZ:
                raise InvalidSpec(f"tone {tone} Hz outside the audio band")

    @property
    def duration_ms(self) -> float:
        return self.hold_ms + self.gap_ms


class ToneAlphabet:
    """Single-tone alphabet with uniform spacing across a band."""

    def __init__(self, symbols: str | int, low_hz: float, high_hz: float):
        self.symbols = symbols if isinstance(symbols, str) else None
        n = len(symbols) if isinstance(symbols, str) else symbols
        self.size = n
        self.spacing_hz = (high_hz - low_hz) / (n - 1)
        self.tones = low_hz + np.arange(n) * self.spacing_hz

    def tone(self, index: int) -> float:
        return float(self.tones[index])

    def index_for(self, char: str, position: int = 0) -> int:
        idx = self.symbols.find(char.upper())
        if idx < 0:
            raise UnsupportedCharacter(char, position)
        return idx

    def nearest(self, freq_hz: float) -> int:
        """Snap a measured frequency to the closest alphabet index."""
        return int(np.argmin(np.abs(self.tones - freq_hz)))


class DtmfTable:
    """16x16 dual-tone byte alphabet.

    Columns span the low band, rows the high band; byte b maps to
    (row floor(b/16), column b mod 16).
    """

    def __init__(self):
        self.col_tones = DTMF_COL_LOW_HZ + np.arange(16) * (
            (DTMF_COL_HIGH_HZ - DTMF_COL_LOW_HZ) / 15
        )
        self.row_tones = DTMF_ROW_LOW_HZ + np.arange(16) * (
            (DTMF_ROW_HIGH_HZ - DTMF_ROW_LOW_HZ) / 15
        )
        self.spacing_hz = float(self.col_tones[1] - self.col_tones[0])

    def tones_for(self, byte: int) -> tuple[float, float]:
        """(row tone, column tone) for a byte value."""
        if not 0 <= byte <= 255:
            raise InvalidSpec(f"byte value {byte} out of range")
        return float(self.row_tones[byte // 16]), float(self.col_tones[byte % 16])

    def byte_for(self, row_hz: float, col_hz: float) -> int:
        row = int(np.argmin(np.abs(self.row_tones - row_hz)))
        col = int(np.argmin(np.abs(self.col_tones - col_hz)))
        return row * 16 + col


# A-FSK character set: letters, digits, then space, '.', ',', '-', mapped to
# ascending tones.  40 entries over the full audio band.
AFSK_CHARS = "ABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789 .,-"
AFSK_ALPHABET = ToneAlphabet(AFSK_CHARS, AUDIO_BAND_LOW_HZ, AUDIO_BAND_HIGH_HZ)

# 256-tone variant: ~40.8 Hz spacing, finer than the receiver's ~43 Hz bins.
# Known-bad and kept on purpose for the comparative experiment.
DENSE_ALPHABET = ToneAlphabet(256, AUDIO_BAND_LOW_HZ, AUDIO_BAND_HIGH_HZ)

DTMF_TABLE = DtmfTable()


def afsk_encode(
    text: str, hold_ms: float = DEFAULT_HOLD_MS, gap_ms: float = DEFAULT_GAP_MS
) -> list[SymbolEvent]:
    """One single-tone event per character, case-folded."""
    events = []
    for pos, char in enumerate(text):
        idx = AFSK_ALPHABET.index_for(char, pos)
        events.append(SymbolEvent((AFSK_ALPHABET.tone(idx),), hold_ms, gap_ms))
    return events


def dtmf_encode(
    data: bytes, hold_ms: float = DEFAULT_HOLD_MS, gap_ms: float = DEFAULT_GAP_MS
) -> list[SymbolEvent]:
    """One two-tone event per byte."""
    return [
        SymbolEvent(DTMF_TABLE.tones_for(byte), hold_ms, gap_ms) for byte in data
    ]


def dense_encode(
    data: bytes, hold_ms: float = DEFAULT_HOLD_MS, gap_ms: float = DEFAULT_GAP_MS
) -> list[SymbolEvent]:
    """One tone per byte from the 256-tone alphabet."""
    return [
        SymbolEvent((DENSE_ALPHABET.tone(byte),), hold_ms, gap_ms) for byte in data
    ]


def synthesize(events, sample_rate: int = SAMPLE_RATE) -> np.ndarray:
    """Render events to 16-bit signed mono PCM.

    Sinusoids are summed per event with a 2 ms raised-cosine ramp at each
    hold boundary; sample boundaries come from the cumulative event clock so
    total duration drifts by less than one sample per event.
    """
    if sample_rate < 22050:
        raise InvalidSpec(f"sample rate {sample_rate} below 22050 Hz")
    total_ms = sum(e.duration_ms for e in events)
    out = np.zeros(int(round(total_ms * sample_rate / 1000.0)), dtype=np.float64)
    cursor_ms = 0.0
    for event in events:
        start = int(round(cursor_ms * sample_rate / 1000.0))
        hold_end = int(round((cursor_ms + event.hold_ms) * sample_rate / 1000.0))
        n = hold_end - start
        if n > 0:
            t = np.arange(n) / sample_rate
            amp = SINGLE_TONE_AMPLITUDE if len(event.tones) == 1 else DUAL_TONE_AMPLITUDE
            wave = np.zeros(n)
            for tone in event.tones:
                wave += amp * np.sin(2 * np.pi * tone * t)
            ramp = min(int(round(RAMP_MS * sample_rate / 1000.0)), n // 2)
            if ramp > 0:
                shape = 0.5 * (1 - np.cos(np.pi * np.arange(ramp) / ramp))
                wave[:ramp] *= shape
                wave[n - ramp :] *= shape[::-1]
            out[start:hold_end] = wave
        cursor_ms += event.duration_ms
    return np.clip(np.round(out * 32767.0), -32768, 32767).astype(np.int16)
