import logging
from pathlib import Path
from typing import List, Tuple, Union

import numpy as np

from raster.errors import LengthMismatchError, PGMParseError, RasterError, UnsupportedDepthError
from raster.image import MAX_VALUE, EdgeMap, Image

logger = logging.getLogger(__name__)

_WHITESPACE = b' \t\n\r\v\f'


def _read_token(data: bytes, pos: int) -> Tuple[bytes, int, int]:
    """Return (token, token offset, position after token), skipping whitespace and # comments"""
    length = len(data)
    while pos < length:
        byte = data[pos:pos + 1]
        if byte not in _WHITESPACE and byte != b'#':
            break
        if byte == b'#':
            while pos < length and data[pos:pos + 1] not in (b'\n', b'\r'):
                pos += 1
        else:
            pos += 1

    start = pos
    while pos < length and data[pos:pos + 1] not in _WHITESPACE and data[pos:pos + 1] != b'#':
        pos += 1

    return data[start:pos], start, pos


def _read_int(data: bytes, pos: int, field: str) -> Tuple[int, int]:
    token, offset, pos = _read_token(data, pos)
    if not token:
        raise PGMParseError(f"Missing {field} in PGM header", offset)
    if not token.isdigit():
        raise PGMParseError(f"Invalid {field} {token[:16]!r} in PGM header", offset)
    return int(token), pos


def load_pgm(data: bytes) -> Image:
    """Decode a P2 (ASCII) or P5 (binary) graymap"""
    magic = data[:2]
    if magic not in (b'P2', b'P5'):
        raise PGMParseError(f"Unknown magic {magic!r}, expected P2 or P5", 0)

    pos = 2
    width, pos = _read_int(data, pos, 'width')
    height, pos = _read_int(data, pos, 'height')
    maxval_pos = pos
    maxval, pos = _read_int(data, pos, 'maxval')

    if width < 1 or height < 1:
        raise PGMParseError(f"Image dimensions must be positive, got {width}x{height}", maxval_pos)
    if maxval > MAX_VALUE:
        raise UnsupportedDepthError(f"maxval {maxval} exceeds {MAX_VALUE}; only 8-bit graymaps are supported")
    if maxval < 1:
        raise PGMParseError(f"maxval must be positive, got {maxval}", maxval_pos)

    count = width * height

    if magic == b'P5':
        if pos >= len(data) or data[pos:pos + 1] not in _WHITESPACE:
            raise PGMParseError("Expected a single whitespace byte before raster data", pos)
        payload = data[pos + 1:pos + 1 + count]
        if len(payload) != count:
            raise LengthMismatchError(f"Raster has {len(payload)} bytes, expected {count} for {width}x{height}")
        values = np.frombuffer(payload, dtype=np.uint8)
    else:
        tokens: List[int] = []
        while len(tokens) < count:
            token, offset, pos = _read_token(data, pos)
            if not token:
                raise LengthMismatchError(f"Raster has {len(tokens)} samples, expected {count} for {width}x{height}")
            if not token.isdigit():
                raise PGMParseError(f"Invalid sample {token[:16]!r}", offset)
            tokens.append(int(token))
        values = np.array(tokens, dtype=np.int64)

    if values.size and values.max() > maxval:
        raise RasterError(f"Sample value {int(values.max())} exceeds maxval {maxval}")

    return Image(values.reshape(height, width).astype(np.float64), max_value=maxval)


def save_pgm(raster: Union[Image, EdgeMap]) -> bytes:
    """Encode as binary P5; floats are rounded half-up"""
    if isinstance(raster, EdgeMap):
        samples = raster.to_raster()
        maxval = MAX_VALUE
    else:
        maxval = raster.max_value
        samples = np.clip(np.floor(raster.pixels + 0.5), 0, maxval).astype(np.uint8)

    height, width = samples.shape
    header = f"P5\n{width} {height}\n{maxval}\n".encode('ascii')
    return header + samples.tobytes()


def read_pgm(path: Union[str, Path]) -> Image:
    """Read a PGM file from disk"""
    path = Path(path)
    image = load_pgm(path.read_bytes())
    logger.debug(f"Loaded {path.name}: {image.width}x{image.height}, maxval {image.max_value}")
    return image


def write_pgm(path: Union[str, Path], raster: Union[Image, EdgeMap]):
    """Write an image or edge map as P5"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(save_pgm(raster))
