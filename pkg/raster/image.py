from dataclasses import dataclass
from typing import Tuple

import numpy as np

from raster.errors import ParameterError, RasterError

MAX_VALUE = 255


def _frozen(array: np.ndarray, dtype) -> np.ndarray:
    """Copy into a contiguous read-only array"""
    out = np.array(array, dtype=dtype, copy=True, order='C')
    out.setflags(write=False)
    return out


@dataclass(frozen=True, eq=False)
class Image:
    """Grayscale raster, float64 pixels indexed [row, column]"""
    pixels: np.ndarray
    max_value: int = MAX_VALUE

    def __post_init__(self):
        pixels = _frozen(self.pixels, np.float64)
        if pixels.ndim != 2:
            raise RasterError(f"Image must be 2-D, got shape {pixels.shape}")
        if pixels.shape[0] < 1 or pixels.shape[1] < 1:
            raise RasterError(f"Image must be at least 1x1, got {pixels.shape}")
        if not 1 <= self.max_value <= MAX_VALUE:
            raise RasterError(f"max_value {self.max_value} outside [1, {MAX_VALUE}]")
        if not np.all(np.isfinite(pixels)) or pixels.min() < 0.0 or pixels.max() > self.max_value:
            raise RasterError(f"Pixel values must lie in [0, {self.max_value}]")
        object.__setattr__(self, 'pixels', pixels)

    @classmethod
    def from_clipped(cls, values: np.ndarray, max_value: int = MAX_VALUE) -> 'Image':
        """Build an image from an arbitrary field, clamping into range"""
        return cls(np.clip(values, 0.0, max_value), max_value)

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def shape(self) -> Tuple[int, int]:
        return self.pixels.shape

    def __eq__(self, other) -> bool:
        if not isinstance(other, Image):
            return NotImplemented
        return self.max_value == other.max_value and np.array_equal(self.pixels, other.pixels)


@dataclass(frozen=True, eq=False)
class EdgeMap:
    """Binary raster; True marks an edge pixel (serialized as 255)"""
    bits: np.ndarray

    def __post_init__(self):
        bits = _frozen(self.bits, bool)
        if bits.ndim != 2 or bits.size == 0:
            raise RasterError(f"EdgeMap must be a non-empty 2-D array, got shape {bits.shape}")
        object.__setattr__(self, 'bits', bits)

    @classmethod
    def empty(cls, shape: Tuple[int, int]) -> 'EdgeMap':
        return cls(np.zeros(shape, dtype=bool))

    @property
    def height(self) -> int:
        return self.bits.shape[0]

    @property
    def width(self) -> int:
        return self.bits.shape[1]

    @property
    def shape(self) -> Tuple[int, int]:
        return self.bits.shape

    @property
    def white_count(self) -> int:
        return int(np.count_nonzero(self.bits))

    def to_raster(self) -> np.ndarray:
        """Serialized 0/255 form"""
        return np.where(self.bits, MAX_VALUE, 0).astype(np.uint8)

    def to_image(self) -> Image:
        return Image(self.to_raster().astype(np.float64))

    def __eq__(self, other) -> bool:
        if not isinstance(other, EdgeMap):
            return NotImplemented
        return np.array_equal(self.bits, other.bits)


@dataclass(frozen=True, eq=False)
class Kernel:
    """Square odd-sized weight mask applied in correlation orientation"""
    weights: np.ndarray

    def __post_init__(self):
        weights = _frozen(self.weights, np.float64)
        if weights.ndim != 2 or weights.shape[0] != weights.shape[1]:
            raise ParameterError(f"Kernel must be square, got shape {weights.shape}")
        if weights.shape[0] % 2 == 0:
            raise ParameterError(f"Kernel size must be odd, got {weights.shape[0]}")
        object.__setattr__(self, 'weights', weights)

    @property
    def size(self) -> int:
        return self.weights.shape[0]

    @property
    def radius(self) -> int:
        return self.size // 2

    @classmethod
    def identity(cls, size: int = 3) -> 'Kernel':
        weights = np.zeros((size, size))
        weights[size // 2, size // 2] = 1.0
        return cls(weights)


@dataclass(frozen=True)
class Window3:
    """Eight neighbors of [i, j], labeled clockwise from the top-left"""
    a0: float
    a1: float
    a2: float
    a3: float
    a4: float
    a5: float
    a6: float
    a7: float
    center: float

    def neighbors(self) -> Tuple[float, ...]:
        return (self.a0, self.a1, self.a2, self.a3, self.a4, self.a5, self.a6, self.a7)
