"""Receiver pipeline: chunked spectra, symbol detection, stream decoding.

The audio is windowed into 1024-sample chunks (~43 Hz bins), each chunk is
classified by its band peaks, equal neighbouring decisions merge into
symbols, and the symbol stream is aligned to the known symbol clock before
the link layer reassembles it.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .constants import (
    AUDIO_BAND_HIGH_HZ,
    AUDIO_BAND_LOW_HZ,
    CHUNK_HOP,
    CHUNK_SIZE,
    DEFAULT_GAP_MS,
    DEFAULT_HOLD_MS,
    DTMF_COL_HIGH_HZ,
    DTMF_COL_LOW_HZ,
    DTMF_ROW_HIGH_HZ,
    DTMF_ROW_LOW_HZ,
    SAMPLE_RATE,
    SYNC_DETECT_HIGH_HZ,
    SYNC_DETECT_LOW_HZ,
)
from .link_protocol import DecodedStream, DecodedSymbol, parse_stream
from .modem_tx import AFSK_ALPHABET, DENSE_ALPHABET, DTMF_TABLE

# A chunk counts as silence unless its peak clears the median bin by 6 dB.
SILENCE_THRESHOLD = 2.0

_WINDOW = np.hanning(CHUNK_SIZE)
_FREQS = np.fft.rfftfreq(CHUNK_SIZE, 1.0 / SAMPLE_RATE)[: CHUNK_SIZE // 2]

SCHEMES = ("afsk", "dtmf", "dense_afsk")


@dataclass(eq=False)
class SpectralChunk:
    """One-sided magnitude spectrum of a 1024-sample chunk."""

    magnitudes: np.ndarray = field(repr=False)
    chunk_index: int

    bin_width: float = SAMPLE_RATE / CHUNK_SIZE

    @property
    def start_sample(self) -> int:
        return self.chunk_index * CHUNK_HOP


@dataclass(frozen=True)
class SymbolDecision:
    """A run of equal chunk classifications.

    kind is "afsk", "dtmf", "dense_afsk", "sync", or "silence"; value holds
    the alphabet index (afsk), byte (dtmf/dense_afsk), or None.  confidence
    is the mean peak-over-median ratio in dB.
    """

    kind: str
    value: int | None
    confidence: float
    start_chunk: int
    end_chunk: int  # inclusive

    def interval_samples(self) -> tuple[int, int]:
        return self.start_chunk * CHUNK_HOP, self.end_chunk * CHUNK_HOP + CHUNK_SIZE


def chunk_spectra(pcm: np.ndarray) -> list[SpectralChunk]:
    """Hann-windowed magnitude spectra at 1024 samples per chunk, 512 hop."""
    arr = np.asarray(pcm)
    x = arr.astype(np.float64)
    if np.issubdtype(arr.dtype, np.integer):
        x /= 32768.0
    if len(x) < CHUNK_SIZE:
        x = np.pad(x, (0, CHUNK_SIZE - len(x)))
    n_chunks = (len(x) - CHUNK_SIZE) // CHUNK_HOP + 1
    windows = np.lib.stride_tricks.sliding_window_view(x, CHUNK_SIZE)
    chunks: list[SpectralChunk] = []
    # batch the FFTs so long captures do not materialize huge temporaries
    for base in range(0, n_chunks, 4096):
        starts = np.arange(base, min(base + 4096, n_chunks)) * CHUNK_HOP
        mags = np.abs(np.fft.rfft(windows[starts] * _WINDOW, axis=1))[:, : CHUNK_SIZE // 2]
        chunks.extend(SpectralChunk(mags[i], base + i) for i in range(len(starts)))
    return chunks


def _band_indices(low: float, high: float) -> np.ndarray:
    return np.flatnonzero((_FREQS >= low) & (_FREQS <= high))

_AUDIO_IDX = _band_indices(AUDIO_BAND_LOW_HZ, AUDIO_BAND_HIGH_HZ)
_COL_IDX = _band_indices(DTMF_COL_LOW_HZ, DTMF_COL_HIGH_HZ)
_ROW_IDX = _band_indices(DTMF_ROW_LOW_HZ, DTMF_ROW_HIGH_HZ)


def _classify(chunk: SpectralChunk, scheme: str) -> tuple[str, int | None, float]:
    mags = chunk.magnitudes
    band = mags[_AUDIO_IDX]
    peak_pos = int(np.argmax(band))
    peak = float(band[peak_pos])
    median = float(np.median(band))
    if peak <= 0.0 or peak < SILENCE_THRESHOLD * median:
        confidence = 0.0 if peak <= 0 else 20.0 * np.log10(peak / max(median, 1e-30))
        return "silence", None, confidence
    confidence = 20.0 * np.log10(peak / median) if median > 0 else 120.0
    dominant_hz = float(_FREQS[_AUDIO_IDX[peak_pos]])
    if scheme == "dtmf":
        # only the dtmf alphabet keeps the guard gap clear; the uniform
        # afsk/dense alphabets have legitimate tones inside it
        if SYNC_DETECT_LOW_HZ <= dominant_hz <= SYNC_DETECT_HIGH_HZ:
            return "sync", None, confidence
        col_hz = float(_FREQS[_COL_IDX[np.argmax(mags[_COL_IDX])]])
        row_hz = float(_FREQS[_ROW_IDX[np.argmax(mags[_ROW_IDX])]])
        return "dtmf", DTMF_TABLE.byte_for(row_hz, col_hz), confidence
    if scheme == "dense_afsk":
        return "dense_afsk", DENSE_ALPHABET.nearest(dominant_hz), confidence
    return "afsk", AFSK_ALPHABET.nearest(dominant_hz), confidence


def detect_symbol(chunks, scheme: str = "dtmf") -> list[SymbolDecision]:
    """Classify chunks and merge consecutive equal decisions."""
    if scheme not in SCHEMES:
        raise ValueError(f"scheme must be one of {SCHEMES}, got {scheme!r}")
    decisions: list[SymbolDecision] = []
    run: list[float] = []
    run_key: tuple[str, int | None] | None = None
    run_start = 0

    def flush(end_chunk):
        if run_key is not None:
            decisions.append(
                SymbolDecision(
                    run_key[0],
                    run_key[1],
                    float(np.mean(run)),
                    run_start,
                    end_chunk,
                )
            )

    for chunk in chunks:
        kind, value, confidence = _classify(chunk, scheme)
        key = (kind, value)
        if key != run_key:
            flush(chunk.chunk_index - 1)
            run_key, run_start, run = key, chunk.chunk_index, []
        run.append(confidence)
    if run_key is not None:
        flush(chunks[-1].chunk_index)
    return decisions


def _to_symbol(decision: SymbolDecision) -> DecodedSymbol:
    if decision.kind == "sync":
        return DecodedSymbol("sync")
    if decision.kind == "silence":
        return DecodedSymbol("silence")
    if decision.kind == "afsk":
        return DecodedSymbol("char", AFSK_ALPHABET.symbols[decision.value])
    return DecodedSymbol("byte", decision.value)


def align_to_symbol_clock(
    decisions,
    hold_ms: float = DEFAULT_HOLD_MS,
    gap_ms: float = DEFAULT_GAP_MS,
    sample_rate: int = SAMPLE_RATE,
    signal_len: int | None = None,
) -> list[DecodedSymbol]:
    """Map merged decisions onto the known symbol grid.

    One decision run can span several slots (repeated symbols never go
    silent in between); each slot takes the decision overlapping most of
    its hold window.  signal_len, when known, bounds the grid so windows
    spilling past the stream end cannot mint extra slots.
    """
    active = [d for d in decisions if d.kind != "silence"]
    if not active:
        return []
    slot = (hold_ms + gap_ms) * sample_rate / 1000.0
    hold = hold_ms * sample_rate / 1000.0
    t0 = active[0].start_chunk * CHUNK_HOP
    end = active[-1].end_chunk * CHUNK_HOP + CHUNK_SIZE
    if signal_len is not None:
        end = min(end, signal_len)
    n_slots = max(1, int(round((end - t0) / slot)))
    intervals = [d.interval_samples() for d in active]
    symbols: list[DecodedSymbol] = []
    # decisions and slots are both time-ordered: sweep one pointer forward
    first = 0
    for k in range(n_slots):
        lo = t0 + k * slot
        hi = lo + hold
        while first < len(active) and intervals[first][1] <= lo:
            first += 1
        best, best_overlap = None, 0.0
        j = first
        while j < len(active) and intervals[j][0] < hi:
            overlap = min(hi, intervals[j][1]) - max(lo, intervals[j][0])
            if overlap > best_overlap:
                best, best_overlap = active[j], overlap
            j += 1
        symbols.append(_to_symbol(best) if best is not None else DecodedSymbol("silence"))
    return symbols


def decode(
    pcm: np.ndarray,
    scheme: str = "dtmf",
    ground_truth: bytes | None = None,
    hold_ms: float = DEFAULT_HOLD_MS,
    gap_ms: float = DEFAULT_GAP_MS,
    max_payload: int = 16,
) -> DecodedStream:
    """Full receive pipeline: spectra -> symbol decisions -> link layer."""
    pcm = np.asarray(pcm)
    # pad the tail so a final sub-window symbol still gets a full analysis
    # window; the true length bounds the symbol grid
    padded = np.concatenate([pcm, np.zeros(CHUNK_SIZE, dtype=pcm.dtype)])
    chunks = chunk_spectra(padded)
    decisions = detect_symbol(chunks, scheme)
    symbols = align_to_symbol_clock(decisions, hold_ms, gap_ms, signal_len=len(pcm))
    return parse_stream(symbols, ground_truth=ground_truth, max_payload=max_payload)
