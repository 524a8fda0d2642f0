"""Exception types shared across the package."""


class RasterFmError(Exception):
    """Base class for all rasterfm errors."""


class InvalidSpec(RasterFmError):
    """A tone-map or display-mode specification violates its constraints."""


class NoPattern(RasterFmError):
    """A pixel map carries no detectable stripe pattern."""


class EmptyBand(RasterFmError):
    """A requested frequency band contains no spectrum bins."""


class NoTone(RasterFmError):
    """No audio tone stands out from the noise floor."""


class UnsupportedCharacter(RasterFmError):
    """A character outside the A-FSK alphabet was submitted for encoding."""

    def __init__(self, char: str, position: int):
        self.char = char
        self.position = position
        super().__init__(f"unsupported character {char!r} at position {position}")


class TooLarge(RasterFmError):
    """Payload exceeds what the framing scheme can address."""


class NoCapacity(RasterFmError):
    """A monitor timeline has too little off-time to fit the transmission."""
