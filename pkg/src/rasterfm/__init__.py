"""rasterfm: a software modem over simulated video-adapter FM emanations.

Pipeline: pixel maps rendered by a display adapter radiate a carrier keyed
at audio rate; an FM receiver turns that into tones; this package models
every stage from pixel-map generation through channel impairment to byte
recovery, at desk scale.
"""

from .channel_sim import ChannelParams
from .kernels import BACKEND as KERNEL_BACKEND
from .link_protocol import DecodedStream, Packet
from .modem_tx import SymbolEvent
from .pixelmap import PixelMap, ToneMapSpec
from .video_timing import PRESETS, DisplayMode, pixel_clock

__version__ = "0.1.0"

__all__ = [
    "ChannelParams",
    "DecodedStream",
    "DisplayMode",
    "KERNEL_BACKEND",
    "Packet",
    "PixelMap",
    "PRESETS",
    "SymbolEvent",
    "ToneMapSpec",
    "pixel_clock",
    "__version__",
]
