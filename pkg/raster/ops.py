import numpy as np
from scipy import ndimage

from raster.image import EdgeMap, Image, Kernel, Window3

# (row, column) offsets of a0..a7, clockwise from the top-left
NEIGHBOR_OFFSETS = (
    (-1, -1), (-1, 0), (-1, 1), (0, 1),
    (1, 1), (1, 0), (1, -1), (0, -1),
)


def window3(image: Image, i: int, j: int) -> Window3:
    """3x3 neighborhood of [i, j] with replicated borders"""
    if not (0 <= i < image.height and 0 <= j < image.width):
        raise IndexError(f"Pixel ({i}, {j}) outside {image.height}x{image.width} image")

    pixels = image.pixels
    values = []
    for di, dj in NEIGHBOR_OFFSETS:
        r = min(max(i + di, 0), image.height - 1)
        c = min(max(j + dj, 0), image.width - 1)
        values.append(float(pixels[r, c]))

    return Window3(*values, center=float(pixels[i, j]))


def neighbor_stack(values: np.ndarray) -> np.ndarray:
    """Stack of the eight replicate-bordered neighbor fields, shape (8, H, W), in a0..a7 order"""
    height, width = values.shape
    padded = np.pad(values, 1, mode='edge')
    return np.stack([
        padded[1 + di:1 + di + height, 1 + dj:1 + dj + width]
        for di, dj in NEIGHBOR_OFFSETS
    ])


def convolve(image: Image, kernel: Kernel) -> np.ndarray:
    """Correlate with replicated borders; the kernel is not flipped"""
    return ndimage.correlate(image.pixels, kernel.weights, mode='nearest')


def border_mask(shape) -> np.ndarray:
    """True on the one-pixel frame of a raster"""
    mask = np.zeros(shape, dtype=bool)
    mask[0, :] = mask[-1, :] = True
    mask[:, 0] = mask[:, -1] = True
    return mask


def edges_with_clear_border(bits: np.ndarray) -> EdgeMap:
    """Wrap a boolean field as an EdgeMap with its frame forced to non-edge"""
    bits = np.array(bits, dtype=bool)
    bits[border_mask(bits.shape)] = False
    return EdgeMap(bits)
