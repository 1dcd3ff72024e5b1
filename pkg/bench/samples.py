import logging
from pathlib import Path
from typing import Dict

import numpy as np

from raster.image import MAX_VALUE, Image
from raster.pgm import write_pgm

logger = logging.getLogger(__name__)

SAMPLE_SEED = 20240101


def synthetic_mammogram(size: int = 128, seed: int = 0) -> Image:
    """
    Mammogram-like 8-bit raster.

    A bright half-ellipse (breast) hangs off the left edge on a dark
    background, with a brighter pectoral triangle in the top-left corner,
    one Gaussian mass inside the breast and seeded sensor noise.
    """
    rng = np.random.default_rng(seed)
    rows, cols = np.mgrid[0:size, 0:size].astype(np.float64)

    center_row = size * rng.uniform(0.45, 0.55)
    semi_rows = size * rng.uniform(0.38, 0.46)
    semi_cols = size * rng.uniform(0.55, 0.75)
    radial = ((rows - center_row) / semi_rows) ** 2 + (cols / semi_cols) ** 2
    breast = radial <= 1.0

    pixels = np.full((size, size), 12.0)
    pixels[breast] = 120.0 + 60.0 * (1.0 - radial[breast])

    pectoral_depth = size * rng.uniform(0.25, 0.4)
    pectoral = (rows / pectoral_depth + cols / (0.6 * pectoral_depth)) <= 1.0
    pixels[pectoral & breast] = 215.0

    mass_row = center_row + size * rng.uniform(-0.15, 0.15)
    mass_col = semi_cols * rng.uniform(0.3, 0.6)
    mass_sigma = size * rng.uniform(0.03, 0.06)
    mass = 45.0 * np.exp(-((rows - mass_row) ** 2 + (cols - mass_col) ** 2) / (2 * mass_sigma ** 2))
    pixels += np.where(breast, mass, 0.0)

    pixels += rng.normal(0.0, 3.0, size=pixels.shape)
    return Image(np.clip(np.rint(pixels), 0, MAX_VALUE))


def generate_samples(count: int = 5, size: int = 128, seed: int = SAMPLE_SEED) -> Dict[str, Image]:
    return {f"synth{index + 1:03d}": synthetic_mammogram(size, seed + index) for index in range(count)}


def write_samples(output_dir, count: int = 5, size: int = 128, seed: int = SAMPLE_SEED) -> Dict[str, Path]:
    """Write the synthetic corpus as P5 files"""
    output_dir = Path(output_dir)
    output_dir.mkdir(parents=True, exist_ok=True)

    written = {}
    for image_id, image in generate_samples(count, size, seed).items():
        path = output_dir / f"{image_id}.pgm"
        write_pgm(path, image)
        written[image_id] = path

    logger.info(f"Wrote {len(written)} synthetic samples to {output_dir}")
    return written
