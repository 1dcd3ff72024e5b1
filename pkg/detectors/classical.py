import logging
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from raster.errors import ParameterError
from raster.image import EdgeMap, Image, Kernel
from raster.ops import convolve, edges_with_clear_border, neighbor_stack

logger = logging.getLogger(__name__)


class ThresholdMode(Enum):
    ABSOLUTE = "absolute"
    FRACTION = "fraction"


@dataclass(frozen=True)
class ThresholdSpec:
    mode: ThresholdMode = ThresholdMode.FRACTION
    value: float = 0.20

    def __post_init__(self):
        if not isinstance(self.mode, ThresholdMode):
            object.__setattr__(self, 'mode', ThresholdMode(self.mode))
        if self.value < 0:
            raise ParameterError(f"Threshold must be non-negative, got {self.value}")
        if self.mode == ThresholdMode.FRACTION and self.value > 1:
            raise ParameterError(f"Fraction-of-max threshold must lie in [0, 1], got {self.value}")

    @classmethod
    def fraction(cls, value: float) -> 'ThresholdSpec':
        return cls(ThresholdMode.FRACTION, value)

    @classmethod
    def absolute(cls, value: float) -> 'ThresholdSpec':
        return cls(ThresholdMode.ABSOLUTE, value)

    def resolve(self, reference_max: float) -> float:
        """Concrete threshold given the maximum of the field being cut"""
        if self.mode == ThresholdMode.ABSOLUTE:
            return float(self.value)
        return float(self.value) * float(reference_max)


@dataclass(frozen=True, eq=False)
class GradientField:
    """gx runs down rows, gy across columns; direction = atan2(gy, gx) in (-pi, pi]"""
    gx: np.ndarray
    gy: np.ndarray
    magnitude: np.ndarray
    direction: np.ndarray

    @classmethod
    def from_components(cls, gx: np.ndarray, gy: np.ndarray) -> 'GradientField':
        gx = np.array(gx, dtype=np.float64)
        gy = np.array(gy, dtype=np.float64)
        magnitude = np.sqrt(gx ** 2 + gy ** 2)
        direction = np.arctan2(gy, gx)
        direction[direction <= -math.pi] = math.pi
        for array in (gx, gy, magnitude, direction):
            array.setflags(write=False)
        return cls(gx, gy, magnitude, direction)

    @property
    def shape(self):
        return self.magnitude.shape


def roberts(image: Image) -> GradientField:
    """Roberts cross, assigned to the top-left pixel of each 2x2 cross"""
    padded = np.pad(image.pixels, ((0, 1), (0, 1)), mode='edge')
    f = padded[:-1, :-1]
    down_right = padded[1:, 1:]
    down = padded[1:, :-1]
    right = padded[:-1, 1:]
    return GradientField.from_components(f - down_right, down - right)


def _weighted_difference(pixels: np.ndarray, c: float) -> GradientField:
    a = neighbor_stack(pixels)
    gx = (a[6] + c * a[5] + a[4]) - (a[0] + c * a[1] + a[2])
    gy = (a[2] + c * a[3] + a[4]) - (a[0] + c * a[7] + a[6])
    return GradientField.from_components(gx, gy)


def prewitt(image: Image, c: float = 1.0) -> GradientField:
    """Prewitt family with emphasis constant c on the center row/column"""
    if c <= 0:
        raise ParameterError(f"Prewitt constant c must be positive, got {c}")
    return _weighted_difference(image.pixels, float(c))


def sobel(image: Image) -> GradientField:
    return _weighted_difference(image.pixels, 2.0)


def gradient_to_edges(field: GradientField, thresh: ThresholdSpec) -> EdgeMap:
    """Binarize a gradient magnitude; zero magnitude is never an edge"""
    magnitude = field.magnitude
    threshold = thresh.resolve(magnitude.max())
    logger.debug(f"Gradient threshold resolved to {threshold:.4f}")
    return edges_with_clear_border((magnitude >= threshold) & (magnitude > 0))


def log_kernel(sigma: float) -> Kernel:
    """Sampled Laplacian of Gaussian, mean-subtracted to sum to zero"""
    if sigma <= 0:
        raise ParameterError(f"LoG sigma must be positive, got {sigma}")

    radius = int(math.ceil(3 * sigma))
    y, x = np.mgrid[-radius:radius + 1, -radius:radius + 1].astype(np.float64)
    r2 = (x * x + y * y) / (2.0 * sigma * sigma)
    weights = -1.0 / (math.pi * sigma ** 4) * (1.0 - r2) * np.exp(-r2)
    weights -= weights.mean()
    return Kernel(weights)


def zero_crossings(response: np.ndarray, thresh: ThresholdSpec) -> np.ndarray:
    """Mark the pixel nearer zero of every 4-adjacent sign-change pair with enough slope"""
    marks = np.zeros(response.shape, dtype=bool)

    pairs = (
        (response[:, :-1], response[:, 1:], (slice(None), slice(None, -1)), (slice(None), slice(1, None))),
        (response[:-1, :], response[1:, :], (slice(None, -1), slice(None)), (slice(1, None), slice(None))),
    )

    max_slope = 0.0
    for p, q, _, _ in pairs:
        if p.size:
            max_slope = max(max_slope, float(np.abs(p - q).max()))
    if max_slope == 0.0:
        return marks

    threshold = thresh.resolve(max_slope)
    for p, q, p_index, q_index in pairs:
        if not p.size:
            continue
        crossing = (p * q < 0) & (np.abs(p - q) >= threshold)
        p_nearer = np.abs(p) <= np.abs(q)
        marks[p_index] |= crossing & p_nearer
        marks[q_index] |= crossing & ~p_nearer

    return marks


def log_detect(image: Image, sigma: float = 1.0, thresh: ThresholdSpec = ThresholdSpec()) -> EdgeMap:
    """Laplacian-of-Gaussian zero-crossing detector"""
    kernel = log_kernel(sigma)
    response = convolve(image, kernel)
    return edges_with_clear_border(zero_crossings(response, thresh))
