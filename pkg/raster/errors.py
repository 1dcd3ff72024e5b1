class RasterError(ValueError):
    """Base error for raster construction and I/O"""


class PGMParseError(RasterError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at byte offset {offset})")
        self.offset = offset


class UnsupportedDepthError(RasterError):
    pass


class LengthMismatchError(RasterError):
    pass


class ParameterError(ValueError):
    """Raised when a detector or kernel parameter is out of range"""


class DimensionMismatchError(ValueError):
    pass
