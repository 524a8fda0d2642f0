"""Raw and structured transmission modes.

Raw mode concatenates symbols with no headers; losses go unnoticed.  The
structured protocol wraps payload chunks in packets -- sync marker, sequence
number, size, payload, checksum -- so the receiver can tell which parts of
the data actually arrived.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .constants import DEFAULT_GAP_MS, DEFAULT_HOLD_MS, SYNC_FREQ_HZ
from .errors import TooLarge
from .modem_tx import (
    AFSK_ALPHABET,
    DENSE_ALPHABET,
    DTMF_TABLE,
    SymbolEvent,
    afsk_encode,
    dtmf_encode,
)

DEFAULT_MAX_PAYLOAD = 16

# Packet overhead in symbol slots: sync (2) + seq (2) + size (1) + crc (1).
PACKET_OVERHEAD_SLOTS = 6

# CRC-8, polynomial x^8 + x^2 + x + 1 (0x07), init 0x00, over seq|size|payload.
CRC8_POLY = 0x07


def _build_crc_table() -> list[int]:
    table = []
    for byte in range(256):
        crc = byte
        for _ in range(8):
            crc = ((crc << 1) ^ CRC8_POLY if crc & 0x80 else crc << 1) & 0xFF
        table.append(crc)
    return table


_CRC_TABLE = _build_crc_table()


def crc8(data: bytes) -> int:
    crc = 0x00
    for byte in data:
        crc = _CRC_TABLE[crc ^ byte]
    return crc


@dataclass(frozen=True)
class Packet:
    """Structured-protocol unit; checksum covers seq, size, and payload."""

    seq: int
    payload: bytes

    def __post_init__(self):
        if not 0 <= self.seq <= 0xFFFF:
            raise TooLarge(f"sequence number {self.seq} exceeds 16 bits")
        if len(self.payload) > 255:
            raise TooLarge("payload length exceeds the 8-bit size field")

    @property
    def size(self) -> int:
        return len(self.payload)

    def header_and_body(self) -> bytes:
        return bytes([self.seq >> 8, self.seq & 0xFF, self.size]) + self.payload

    @property
    def checksum(self) -> int:
        return crc8(self.header_and_body())


@dataclass(frozen=True)
class DecodedSymbol:
    """Receiver-side symbol: a data byte, an A-FSK character, sync, or silence."""

    kind: str  # "byte" | "char" | "sync" | "silence"
    value: int | str | None = None


@dataclass
class DecodedStream:
    """Recovered payload plus per-packet accounting."""

    mode: str  # "raw" | "structured"
    data: bytes
    text: str | None = None
    packet_reports: dict[int, str] = field(default_factory=dict)
    byte_success_rate: float | None = None

    def count(self, status: str) -> int:
        return sum(1 for s in self.packet_reports.values() if s == status)

    @property
    def packets_ok(self) -> int:
        return self.count("ok")

    @property
    def packets_failed(self) -> int:
        return self.count("checksum_failed")

    @property
    def packets_missing(self) -> int:
        return self.count("missing")

    def report_dict(self) -> dict:
        return {
            "mode": self.mode,
            "success_rate": self.byte_success_rate,
            "packets_ok": self.packets_ok,
            "packets_failed": self.packets_failed,
            "packets_missing": self.packets_missing,
        }


def sync_marker_event(
    hold_ms: float = DEFAULT_HOLD_MS, gap_ms: float = DEFAULT_GAP_MS
) -> SymbolEvent:
    """The 5500 Hz guard-gap tone, held for two symbol slots."""
    return SymbolEvent((SYNC_FREQ_HZ,), 2 * hold_ms + gap_ms, gap_ms)


def frame_raw(
    data,
    scheme: str = "dtmf",
    hold_ms: float = DEFAULT_HOLD_MS,
    gap_ms: float = DEFAULT_GAP_MS,
) -> list[SymbolEvent]:
    """Headerless concatenation of encoded symbols."""
    if scheme == "afsk":
        if isinstance(data, (bytes, bytearray)):
            data = data.decode("ascii")
        return afsk_encode(data, hold_ms, gap_ms)
    if scheme == "dtmf":
        return dtmf_encode(bytes(data), hold_ms, gap_ms)
    raise ValueError(f"unknown raw scheme {scheme!r}")


def split_packets(data: bytes, max_payload: int = DEFAULT_MAX_PAYLOAD) -> list[Packet]:
    if len(data) > 0x10000 * max_payload:
        raise TooLarge(
            f"{len(data)} bytes exceed the 16-bit sequence space at "
            f"{max_payload}-byte payloads"
        )
    return [
        Packet(seq, data[pos : pos + max_payload])
        for seq, pos in enumerate(range(0, len(data), max_payload))
    ]


def frame_structured(
    data: bytes,
    max_payload: int = DEFAULT_MAX_PAYLOAD,
    hold_ms: float = DEFAULT_HOLD_MS,
    gap_ms: float = DEFAULT_GAP_MS,
) -> list[SymbolEvent]:
    """Per packet: sync marker, then seq, size, payload, checksum as DTMF."""
    events: list[SymbolEvent] = []
    for packet in split_packets(bytes(data), max_payload):
        events.append(sync_marker_event(hold_ms, gap_ms))
        body = packet.header_and_body() + bytes([packet.checksum])
        events.extend(dtmf_encode(body, hold_ms, gap_ms))
    return events


def events_to_symbols(events, scheme: str = "dtmf") -> list[DecodedSymbol]:
    """Ideal-channel mapping of events back to symbols (no audio involved).

    A sync marker spans two symbol slots, so it yields two sync symbols,
    matching what the grid-aligned audio receiver produces.
    """
    symbols: list[DecodedSymbol] = []
    for event in events:
        if len(event.tones) == 2:
            symbols.append(
                DecodedSymbol(
                    "byte", DTMF_TABLE.byte_for(max(event.tones), min(event.tones))
                )
            )
        elif abs(event.tones[0] - SYNC_FREQ_HZ) < 1.0:
            symbols.extend([DecodedSymbol("sync")] * 2)
        elif scheme == "dense_afsk":
            symbols.append(DecodedSymbol("byte", DENSE_ALPHABET.nearest(event.tones[0])))
        else:
            idx = AFSK_ALPHABET.nearest(event.tones[0])
            symbols.append(DecodedSymbol("char", AFSK_ALPHABET.symbols[idx]))
    return symbols


def _infer_mode(symbols) -> str:
    return "structured" if any(s.kind == "sync" for s in symbols) else "raw"


def _is_marker(syms, i) -> bool:
    """A marker is a run of at least two consecutive sync symbols."""
    return (
        i + 1 < len(syms) and syms[i].kind == "sync" and syms[i + 1].kind == "sync"
    )


def _parse_structured(syms, max_payload):
    """Scan marker to marker; single stray syncs inside a body count as
    corrupt placeholder bytes so one injected symbol damages one packet."""
    packets: dict[int, tuple[str, bytes]] = {}
    next_positional_seq = 0
    i = 0
    n = len(syms)
    while i < n:
        if not _is_marker(syms, i):
            i += 1
            continue
        while i < n and syms[i].kind == "sync":
            i += 1
        # body: seq hi, seq lo, size, payload[size], crc -- stop early only
        # at a true marker or end of stream
        body: list[int] = []
        corrupt = False
        want = 3
        while i < n and len(body) < want and not _is_marker(syms, i):
            sym = syms[i]
            if sym.kind == "byte":
                body.append(sym.value)
            else:
                body.append(0)
                corrupt = True
            i += 1
            if len(body) == 3:
                want = 4 + min(body[2], max_payload)
        if len(body) < 4:
            seq, status, payload = next_positional_seq, "checksum_failed", b""
        else:
            seq_field = (body[0] << 8) | body[1]
            size = body[2]
            payload = bytes(body[3 : 3 + min(size, max_payload)])
            crc = body[-1]
            expected = crc8(bytes([body[0], body[1], size]) + payload)
            # only the final packet may be short: a crc-passing short packet
            # with more symbols after it is a misframe, e.g. a corrupted
            # size field whose truncated crc happens to collide -- the
            # 8-bit checksum alone cannot catch that framing shift
            plausible_length = size == max_payload or i >= n
            ok = (
                not corrupt
                and size <= max_payload
                and len(body) == 4 + size
                and plausible_length
                and crc == expected
            )
            if ok:
                seq, status = seq_field, "ok"
            else:
                # checksum failure taints the seq field too; report the
                # packet at its position in the arrival order
                seq, status, payload = next_positional_seq, "checksum_failed", b""
        if seq not in packets or packets[seq][0] != "ok":
            packets[seq] = (status, payload)
        next_positional_seq = seq + 1
    return packets


def parse_stream(
    symbols,
    ground_truth: bytes | None = None,
    max_payload: int = DEFAULT_MAX_PAYLOAD,
) -> DecodedStream:
    """Reassemble a decoded symbol sequence.

    With any sync marker present the stream parses as structured packets
    (gaps in seq become `missing` reports); otherwise the symbols are the
    payload itself.  Corruption is reported, never raised.
    """
    syms = [s for s in symbols if s.kind != "silence"]
    if _infer_mode(syms) == "raw":
        chars = [s.value for s in syms if s.kind == "char"]
        data = bytes(s.value for s in syms if s.kind == "byte")
        text = "".join(chars) if chars else None
        if text and not data:
            data = text.encode("ascii")
        rate = None
        if ground_truth is not None:
            truth = bytes(ground_truth)
            matches = sum(a == b for a, b in zip(data, truth))
            rate = matches / len(truth) if truth else 1.0
        return DecodedStream("raw", data, text=text, byte_success_rate=rate)

    packets = _parse_structured(syms, max_payload)
    if ground_truth is not None:
        expected_packets = max(1, -(-len(ground_truth) // max_payload))
    else:
        expected_packets = (max(packets) + 1) if packets else 0
    reports: dict[int, str] = {}
    chunks: dict[int, bytes] = {}
    for seq in range(expected_packets):
        if seq in packets:
            status, payload = packets[seq]
            reports[seq] = status
            if status == "ok":
                chunks[seq] = payload
        else:
            reports[seq] = "missing"
    for seq, (status, payload) in packets.items():
        if seq >= expected_packets:
            reports[seq] = status
            if status == "ok":
                chunks[seq] = payload

    total = max((seq * max_payload + len(p) for seq, p in chunks.items()), default=0)
    if ground_truth is not None:
        total = max(total, len(ground_truth))
    buffer = bytearray(total)
    for seq, payload in chunks.items():
        buffer[seq * max_payload : seq * max_payload + len(payload)] = payload

    rate = None
    if ground_truth is not None:
        truth = bytes(ground_truth)
        matches = 0
        for seq, payload in chunks.items():
            start = seq * max_payload
            matches = matches + sum(
                a == b for a, b in zip(payload, truth[start : start + len(payload)])
            )
        rate = matches / len(truth) if truth else 1.0
    return DecodedStream(
        "structured", bytes(buffer), packet_reports=reports, byte_success_rate=rate
    )
