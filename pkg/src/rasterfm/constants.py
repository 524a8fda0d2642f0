"""Shared signal-plan constants.

The audio band, tone tables, and receiver DSP granularity are one protocol:
transmitter, receiver, and channel model all read from here.
"""

# Usable audio band at the receiver.  Below 600 Hz interference dominates;
# above 11 kHz reception range collapses.
AUDIO_BAND_LOW_HZ = 600.0
AUDIO_BAND_HIGH_HZ = 11000.0

# Dual-tone byte alphabet: 16 column tones in the low band, 16 row tones in
# the high band, a guard gap between 5000 and 6000 Hz.
DTMF_COL_LOW_HZ = 600.0
DTMF_COL_HIGH_HZ = 5000.0
DTMF_ROW_LOW_HZ = 6000.0
DTMF_ROW_HIGH_HZ = 10400.0

# Protocol sync marker sits in the guard gap so no data symbol can alias it.
SYNC_FREQ_HZ = 5500.0
SYNC_DETECT_LOW_HZ = 5200.0
SYNC_DETECT_HIGH_HZ = 5800.0

# Receiver audio path: PCM capture rate and spectral chunking.
SAMPLE_RATE = 44100
CHUNK_SIZE = 1024
CHUNK_HOP = 512
BIN_WIDTH_HZ = SAMPLE_RATE / CHUNK_SIZE  # ~43.066 Hz

# Symbol timing defaults: 70 ms hold is the knee of the quality/delay curve;
# 5 ms gap makes the effective byte period 75 ms.
DEFAULT_HOLD_MS = 70.0
DEFAULT_GAP_MS = 5.0
