import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rasterfm.errors import TooLarge
from rasterfm.link_protocol import (
    DecodedSymbol,
    Packet,
    crc8,
    events_to_symbols,
    frame_raw,
    frame_structured,
    parse_stream,
    split_packets,
    sync_marker_event,
)


def crc8_reference(data: bytes) -> int:
    """Independent oracle: bitwise long division by x^8 + x^2 + x + 1."""
    crc = 0
    for byte in data:
        crc ^= byte
        for _ in range(8):
            crc = ((crc << 1) ^ 0x07) & 0xFF if crc & 0x80 else (crc << 1) & 0xFF
    return crc


@given(st.binary(min_size=0, max_size=64))
def test_crc8_matches_bitwise_reference(data):
    assert crc8(data) == crc8_reference(data)


def test_crc8_known_values():
    # frozen from the bitwise reference
    assert crc8(b"") == 0x00
    assert crc8(b"\x00") == 0x00
    assert crc8(b"123456789") == 0xF4  # classic CRC-8 check value
    assert crc8(b"\xff") == 0xF3


def test_crc8_detects_all_single_byte_corruptions():
    message = bytes([0x12, 0x00, 0x03, 0xAA, 0xBB, 0xCC])
    good = crc8(message)
    for pos in range(len(message)):
        for val in range(256):
            if val == message[pos]:
                continue
            corrupted = bytearray(message)
            corrupted[pos] = val
            assert crc8(bytes(corrupted)) != good


def test_packet_fields():
    p = Packet(0x0102, b"hello")
    assert p.size == 5
    assert p.header_and_body() == b"\x01\x02\x05hello"
    assert p.checksum == crc8(b"\x01\x02\x05hello")
    with pytest.raises(TooLarge):
        Packet(0x10000, b"")


def test_split_packets_sizes():
    packets = split_packets(bytes(40))
    assert [p.size for p in packets] == [16, 16, 8]
    assert [p.seq for p in packets] == [0, 1, 2]
    with pytest.raises(TooLarge):
        split_packets(bytes(0x10000 * 16 + 1))


def test_frame_raw_timing():
    # 1024 bytes at 70/5 ms: 1024 slots, 76.8 s total
    events = frame_raw(bytes(1024))
    assert len(events) == 1024
    assert sum(e.duration_ms for e in events) / 1000 == pytest.approx(76.8)
    # 100 bytes: 7.5 s
    assert sum(e.duration_ms for e in frame_raw(bytes(100))) / 1000 == pytest.approx(7.5)


def test_frame_raw_empty():
    assert frame_raw(b"") == []
    assert frame_structured(b"") == []


def test_frame_structured_timing():
    # 1 KB: 64 packets of 22 slots, 105.6 s
    events = frame_structured(bytes(1024))
    total_ms = sum(e.duration_ms for e in events)
    assert total_ms / 1000 == pytest.approx(105.6)
    # 10 bytes: one packet, 16 slots, 1.2 s
    assert sum(e.duration_ms for e in frame_structured(bytes(10))) / 1000 == pytest.approx(1.2)


def test_structured_raw_ratio():
    for size in (16, 160, 1024, 4096):
        raw_ms = sum(e.duration_ms for e in frame_raw(bytes(size)))
        structured_ms = sum(e.duration_ms for e in frame_structured(bytes(size)))
        assert structured_ms / raw_ms == pytest.approx(22 / 16)


def test_sync_marker_spans_two_slots():
    marker = sync_marker_event(70, 5)
    assert marker.tones == (5500.0,)
    assert marker.duration_ms == pytest.approx(2 * 75.0)


def test_sync_tone_clears_dtmf_bands():
    assert 5000.0 < 5500.0 < 6000.0


@settings(max_examples=30, deadline=None)
@given(st.binary(min_size=0, max_size=600))
def test_frame_parse_inverse_structured(data):
    symbols = events_to_symbols(frame_structured(data))
    out = parse_stream(symbols, ground_truth=data)
    assert out.data == data
    if data:
        assert out.byte_success_rate == 1.0
        assert set(out.packet_reports.values()) == {"ok"}


@settings(deadline=None)
@given(st.binary(min_size=0, max_size=400))
def test_frame_parse_inverse_raw(data):
    symbols = events_to_symbols(frame_raw(data))
    out = parse_stream(symbols, ground_truth=data)
    assert out.mode == "raw"
    assert out.data == data


def test_parse_large_inverse():
    data = np.random.default_rng(0).integers(0, 256, 4096).astype(np.uint8).tobytes()
    out = parse_stream(events_to_symbols(frame_structured(data)), ground_truth=data)
    assert out.data == data
    assert out.packets_ok == 256


def test_raw_stream_without_sync_is_raw():
    symbols = [DecodedSymbol("byte", 7), DecodedSymbol("byte", 9)]
    out = parse_stream(symbols)
    assert out.mode == "raw"
    assert out.data == bytes([7, 9])


def corrupt(symbols, index, new_symbol):
    mutated = list(symbols)
    mutated[index] = new_symbol
    return mutated


def test_single_payload_corruption_flags_one_packet():
    data = bytes(range(64))
    symbols = events_to_symbols(frame_structured(data))
    # packet 1 starts at symbol 22 (2 sync + 20 body); corrupt a payload byte
    victim = 22 + 2 + 3 + 4
    assert symbols[victim].kind == "byte"
    mutated = corrupt(symbols, victim, DecodedSymbol("byte", symbols[victim].value ^ 0xFF))
    out = parse_stream(mutated, ground_truth=data)
    assert out.packet_reports[1] == "checksum_failed"
    assert [s for s, v in sorted(out.packet_reports.items()) if v != "ok"] == [1]


def test_seq_corruption_flags_one_packet():
    data = bytes(range(64))
    symbols = events_to_symbols(frame_structured(data))
    seq_lo = 22 + 3  # packet 1: sync, sync, seq hi, seq lo
    assert symbols[seq_lo] == DecodedSymbol("byte", 1)
    mutated = corrupt(symbols, seq_lo, DecodedSymbol("byte", 0xEE))
    out = parse_stream(mutated, ground_truth=data)
    bad = {s: v for s, v in out.packet_reports.items() if v != "ok"}
    assert bad == {1: "checksum_failed"}


def test_half_marker_corruption_flags_one_packet():
    data = bytes(range(64))
    symbols = events_to_symbols(frame_structured(data))
    # one of the two marker slots corrupted: a single sync is not a marker
    mutated = corrupt(symbols, 22, DecodedSymbol("byte", 0x55))
    out = parse_stream(mutated, ground_truth=data)
    bad = {s: v for s, v in out.packet_reports.items() if v != "ok"}
    assert bad == {1: "missing"}


def test_sync_corruption_flags_one_packet_missing():
    data = bytes(range(64))
    symbols = events_to_symbols(frame_structured(data))
    # destroy half of packet 2's marker (single sync symbols are not markers)
    idx = 2 * 22  # marker of packet 2
    assert symbols[idx].kind == "sync"
    mutated = corrupt(symbols, idx, DecodedSymbol("byte", 0x55))
    mutated = corrupt(mutated, idx + 1, DecodedSymbol("byte", 0x55))
    out = parse_stream(mutated, ground_truth=data)
    bad = {s: v for s, v in out.packet_reports.items() if v != "ok"}
    assert bad == {2: "missing"}


def test_injected_sync_inside_payload_flags_one_packet():
    data = bytes(range(64))
    symbols = events_to_symbols(frame_structured(data))
    victim = 0 + 2 + 3 + 8  # payload byte of packet 0
    mutated = corrupt(symbols, victim, DecodedSymbol("sync"))
    out = parse_stream(mutated, ground_truth=data)
    bad = {s: v for s, v in out.packet_reports.items() if v != "ok"}
    assert bad == {0: "checksum_failed"}
    # the corrupted packet contributes no bytes to the output
    assert out.data[:16] == bytes(16)
    assert out.data[16:] == data[16:]


def test_size_corruption_with_crc_collision_not_silently_accepted():
    # craft payload[3] to equal the crc of the packet truncated to size 3,
    # then corrupt the size field 16 -> 3: the truncated checksum collides,
    # so only the frame-alignment check can catch it
    payload = bytearray(range(16))
    payload[3] = crc8(bytes([0, 0, 3]) + bytes(payload[:3]))
    data = bytes(payload) + bytes(range(100, 116))
    symbols = events_to_symbols(frame_structured(data))
    size_idx = 4  # packet 0: sync, sync, seq hi, seq lo, size
    assert symbols[size_idx] == DecodedSymbol("byte", 16)
    mutated = corrupt(symbols, size_idx, DecodedSymbol("byte", 3))
    out = parse_stream(mutated, ground_truth=data)
    assert out.packet_reports[0] == "checksum_failed"
    assert out.packet_reports[1] == "ok"
    assert out.data[16:] == data[16:]
    assert out.data[:16] == bytes(16)  # nothing silently accepted


def test_success_rate_accounting():
    data = bytes(range(64))
    symbols = events_to_symbols(frame_structured(data))
    mutated = corrupt(symbols, 7, DecodedSymbol("byte", symbols[7].value ^ 1))
    out = parse_stream(mutated, ground_truth=data)
    assert out.byte_success_rate == pytest.approx(48 / 64)
