import numpy as np
import pytest

from raster.image import Image


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


@pytest.fixture
def random_image(rng):
    """Factory for random 8-bit images"""
    def make(height=16, width=16):
        return Image(rng.integers(0, 256, size=(height, width)).astype(np.float64))
    return make


@pytest.fixture
def step_image():
    """Factory for two-level step images; the bright side starts at index `at`"""
    def make(size=32, at=None, jump=200.0, vertical=True, bright_first=False, low=0.0):
        at = size // 2 if at is None else at
        pixels = np.full((size, size), low)
        high = low + jump
        if vertical:
            if bright_first:
                pixels[:, :at] = high
            else:
                pixels[:, at:] = high
        else:
            if bright_first:
                pixels[:at, :] = high
            else:
                pixels[at:, :] = high
        return Image(pixels)
    return make


@pytest.fixture
def constant_image():
    def make(value=100.0, size=64):
        return Image(np.full((size, size), float(value)))
    return make
