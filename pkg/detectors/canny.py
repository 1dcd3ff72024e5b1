import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy import ndimage

from detectors.classical import GradientField, ThresholdSpec, sobel
from raster.errors import ParameterError
from raster.image import EdgeMap, Image, Kernel
from raster.ops import convolve, edges_with_clear_border, neighbor_stack

logger = logging.getLogger(__name__)

# neighbor_stack indices flanking each quantized direction:
# 0 deg down the rows, 45 deg toward +row/+column, 90 deg across columns, 135 deg toward -row/+column
_DIRECTION_NEIGHBORS = ((1, 5), (0, 4), (3, 7), (2, 6))


@dataclass(frozen=True)
class GaussianSpec:
    sigma: float = 1.4
    size: int = 5

    def __post_init__(self):
        if self.sigma <= 0:
            raise ParameterError(f"Gaussian sigma must be positive, got {self.sigma}")
        if self.size < 3 or self.size % 2 == 0:
            raise ParameterError(f"Gaussian size must be odd and at least 3, got {self.size}")


def gaussian_kernel(spec: GaussianSpec) -> Kernel:
    """Sampled isotropic Gaussian normalized to unit sum"""
    k = (spec.size - 1) / 2.0
    y, x = np.ogrid[-k:k + 1, -k:k + 1]
    weights = np.exp(-(x * x + y * y) / (2.0 * spec.sigma * spec.sigma))
    return Kernel(weights / weights.sum())


def smooth(image: Image, spec: GaussianSpec) -> Image:
    return Image.from_clipped(convolve(image, gaussian_kernel(spec)), image.max_value)


def quantize_direction(direction: np.ndarray) -> np.ndarray:
    """Sector 0..3 for 0, 45, 90 and 135 degrees"""
    return np.floor(direction / (math.pi / 4) + 0.5).astype(np.int64) % 4


def nms(field: GradientField) -> np.ndarray:
    """Keep magnitudes that are >= both neighbors along the quantized gradient direction"""
    magnitude = field.magnitude
    neighbors = neighbor_stack(magnitude)
    sector = quantize_direction(field.direction)

    keep = np.zeros(magnitude.shape, dtype=bool)
    for index, (first, second) in enumerate(_DIRECTION_NEIGHBORS):
        local_max = (magnitude >= neighbors[first]) & (magnitude >= neighbors[second])
        keep |= (sector == index) & local_max

    return np.where(keep, magnitude, 0.0)


def threshold_suppressed(suppressed: np.ndarray, thresh: ThresholdSpec,
                         hysteresis: bool = False, low_ratio: float = 0.5) -> EdgeMap:
    """Single global cut, or double-threshold hysteresis when enabled"""
    high = thresh.resolve(suppressed.max())
    strong = (suppressed >= high) & (suppressed > 0)

    if hysteresis:
        if not 0 < low_ratio <= 1:
            raise ParameterError(f"Hysteresis low_ratio must lie in (0, 1], got {low_ratio}")
        weak = (suppressed >= low_ratio * high) & (suppressed > 0)
        strong = ndimage.binary_dilation(strong, structure=np.ones((3, 3)), iterations=-1, mask=weak)
        logger.debug(f"Hysteresis thresholds high={high:.4f} low={low_ratio * high:.4f}")
    else:
        logger.debug(f"Canny threshold resolved to {high:.4f}")

    return edges_with_clear_border(strong)


def canny(image: Image, spec: GaussianSpec = GaussianSpec(), thresh: ThresholdSpec = ThresholdSpec(),
          hysteresis: bool = False, low_ratio: float = 0.5) -> EdgeMap:
    """Smooth, Sobel gradient, non-maximum suppression, threshold"""
    smoothed = smooth(image, spec)
    suppressed = nms(sobel(smoothed))
    return threshold_suppressed(suppressed, thresh, hysteresis, low_ratio)
