import logging
import math
from typing import Optional, Tuple, Union

import numpy as np

from raster.errors import DimensionMismatchError
from raster.image import MAX_VALUE, EdgeMap, Image

logger = logging.getLogger(__name__)

Raster = Union[Image, EdgeMap]

INF = math.inf
NAN = math.nan


def as_gray(raster: Raster) -> np.ndarray:
    """Gray levels of an image, or 0/255 of an edge map"""
    if isinstance(raster, EdgeMap):
        return raster.to_raster().astype(np.float64)
    return raster.pixels


def _pair(f: Raster, F: Raster) -> Tuple[np.ndarray, np.ndarray]:
    a, b = as_gray(f), as_gray(F)
    if a.shape != b.shape:
        raise DimensionMismatchError(f"Cannot compare {a.shape} with {b.shape}")
    return a, b


def _decibels(ratio_numerator: float, ratio_denominator: float, factor: float) -> float:
    if ratio_numerator == 0:
        return NAN
    if ratio_denominator == 0:
        return INF
    return factor * math.log10(ratio_numerator / ratio_denominator)


def mse(f: Raster, F: Raster) -> float:
    a, b = _pair(f, F)
    return float(np.mean((a - b) ** 2))


def e_rms(f: Raster, F: Raster) -> float:
    return math.sqrt(mse(f, F))


def snr_rms(f: Raster, F: Raster) -> float:
    """10 log10 of reference variance over error variance"""
    a, b = _pair(f, F)
    return _decibels(float(np.var(a)), float(np.var(a - b)), 10.0)


def snr_avg(f: Raster, F: Raster) -> float:
    """10 log10 of reference mean power over error mean power"""
    a, b = _pair(f, F)
    return _decibels(float(np.mean(a ** 2)), float(np.mean((a - b) ** 2)), 10.0)


def snr_peak(f: Raster, F: Raster, peak: float = MAX_VALUE) -> float:
    """20 log10(peak / e_rms)"""
    return _decibels(float(peak), e_rms(f, F), 20.0)


def cii(F: Raster) -> float:
    """Michelson contrast (I_max - I_min) / (I_max + I_min)"""
    values = as_gray(F)
    high, low = float(values.max()), float(values.min())
    if high + low == 0:
        return NAN
    return (high - low) / (high + low)


def white_pixel_stats(edge_map: EdgeMap, denominator: Optional[int] = None) -> Tuple[int, float]:
    """(count, percent) of edge pixels; denominator defaults to the full frame"""
    count = edge_map.white_count
    total = edge_map.width * edge_map.height if denominator is None else denominator
    if total <= 0:
        raise ValueError(f"White-pixel denominator must be positive, got {total}")
    return count, 100.0 * count / total
