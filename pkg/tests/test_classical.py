import math

import numpy as np
import pytest

from detectors.classical import (GradientField, ThresholdMode, ThresholdSpec, gradient_to_edges, log_detect,
                                 log_kernel, prewitt, roberts, sobel, zero_crossings)
from detectors.registry import DETECTOR_NAMES, build_detector
from raster.errors import ParameterError
from raster.image import Image, Kernel
from raster.ops import convolve


def clamp(pixels, i, j):
    height, width = pixels.shape
    return pixels[min(max(i, 0), height - 1), min(max(j, 0), width - 1)]


def prewitt_oracle(pixels, c):
    height, width = pixels.shape
    gx = np.zeros_like(pixels)
    gy = np.zeros_like(pixels)
    for i in range(height):
        for j in range(width):
            a0, a1, a2 = clamp(pixels, i - 1, j - 1), clamp(pixels, i - 1, j), clamp(pixels, i - 1, j + 1)
            a7, a3 = clamp(pixels, i, j - 1), clamp(pixels, i, j + 1)
            a6, a5, a4 = clamp(pixels, i + 1, j - 1), clamp(pixels, i + 1, j), clamp(pixels, i + 1, j + 1)
            gx[i, j] = (a6 + c * a5 + a4) - (a0 + c * a1 + a2)
            gy[i, j] = (a2 + c * a3 + a4) - (a0 + c * a7 + a6)
    return gx, gy


def roberts_oracle(pixels):
    height, width = pixels.shape
    gx = np.zeros_like(pixels)
    gy = np.zeros_like(pixels)
    for i in range(height):
        for j in range(width):
            gx[i, j] = pixels[i, j] - clamp(pixels, i + 1, j + 1)
            gy[i, j] = clamp(pixels, i + 1, j) - clamp(pixels, i, j + 1)
    return gx, gy


class TestThresholdSpec:
    def test_fraction_resolves_against_max(self):
        assert ThresholdSpec.fraction(0.2).resolve(100.0) == pytest.approx(20.0)

    def test_absolute_ignores_max(self):
        assert ThresholdSpec.absolute(35.0).resolve(100.0) == 35.0

    def test_mode_accepts_string(self):
        assert ThresholdSpec('absolute', 5.0).mode == ThresholdMode.ABSOLUTE

    @pytest.mark.parametrize('mode, value', [('fraction', 1.5), ('fraction', -0.1), ('absolute', -1.0)])
    def test_invalid_values(self, mode, value):
        with pytest.raises(ParameterError):
            ThresholdSpec(mode, value)


class TestGradientOperators:
    def test_prewitt_matches_oracle(self, random_image):
        for _ in range(100):
            image = random_image()
            field = prewitt(image)
            gx, gy = prewitt_oracle(image.pixels, 1.0)
            np.testing.assert_array_equal(field.gx, gx)
            np.testing.assert_array_equal(field.gy, gy)
            np.testing.assert_array_equal(field.magnitude, np.sqrt(gx ** 2 + gy ** 2))

    def test_sobel_matches_oracle(self, random_image):
        for _ in range(100):
            image = random_image()
            gx, gy = prewitt_oracle(image.pixels, 2.0)
            field = sobel(image)
            np.testing.assert_array_equal(field.gx, gx)
            np.testing.assert_array_equal(field.gy, gy)

    def test_roberts_matches_oracle(self, random_image):
        for _ in range(100):
            image = random_image()
            gx, gy = roberts_oracle(image.pixels)
            field = roberts(image)
            np.testing.assert_array_equal(field.gx, gx)
            np.testing.assert_array_equal(field.gy, gy)

    def test_sobel_is_prewitt_with_two(self, random_image):
        image = random_image(20, 13)
        np.testing.assert_array_equal(sobel(image).magnitude, prewitt(image, 2.0).magnitude)

    def test_prewitt_agrees_with_convolution_masks(self, random_image):
        image = random_image()
        gx_mask = Kernel(np.array([[-1, -1, -1], [0, 0, 0], [1, 1, 1]], dtype=np.float64))
        gy_mask = Kernel(np.array([[-1, 0, 1]] * 3, dtype=np.float64))
        field = prewitt(image)
        np.testing.assert_allclose(field.gx, convolve(image, gx_mask), atol=1e-9)
        np.testing.assert_allclose(field.gy, convolve(image, gy_mask), atol=1e-9)

    def test_transpose_swaps_components(self, random_image):
        image = random_image(12, 17)
        transposed = Image(image.pixels.T)
        for operator in (prewitt, sobel):
            field = operator(image)
            field_t = operator(transposed)
            np.testing.assert_array_equal(field_t.gx, field.gy.T)
            np.testing.assert_array_equal(field_t.gy, field.gx.T)
            np.testing.assert_array_equal(field_t.magnitude, field.magnitude.T)

    def test_constant_shift_is_invisible(self, rng):
        pixels = rng.integers(0, 200, size=(16, 16)).astype(np.float64)
        for operator in (roberts, prewitt, sobel):
            np.testing.assert_array_equal(operator(Image(pixels)).magnitude,
                                          operator(Image(pixels + 55.0)).magnitude)

    def test_direction_range(self, random_image):
        field = sobel(random_image())
        assert np.all(field.direction > -math.pi)
        assert np.all(field.direction <= math.pi)

    def test_prewitt_rejects_nonpositive_c(self, random_image):
        with pytest.raises(ParameterError):
            prewitt(random_image(), 0.0)

    def test_field_is_read_only(self, random_image):
        field = sobel(random_image())
        with pytest.raises(ValueError):
            field.magnitude[0, 0] = 1.0

    def test_from_components_leaves_inputs_writable(self):
        gx, gy = np.ones((3, 3)), np.zeros((3, 3))
        field = GradientField.from_components(gx, gy)
        gx[0, 0] = 5.0
        gy[0, 0] = 5.0
        assert field.gx[0, 0] == 1.0 and field.gy[0, 0] == 0.0
        with pytest.raises(ValueError):
            field.gx[0, 0] = 2.0


class TestGradientToEdges:
    def field(self, cells):
        gx = np.zeros((5, 5))
        for (i, j), value in cells.items():
            gx[i, j] = value
        return GradientField.from_components(gx, np.zeros((5, 5)))

    def test_fraction_of_max(self):
        field = self.field({(1, 1): 10.0, (1, 2): 20.0, (2, 2): 30.0, (3, 3): 100.0})
        edges = gradient_to_edges(field, ThresholdSpec.fraction(0.2))
        assert sorted(zip(*np.nonzero(edges.bits))) == [(1, 2), (2, 2), (3, 3)]

    def test_border_is_cleared(self):
        field = self.field({(0, 0): 100.0, (4, 2): 90.0, (2, 2): 50.0})
        edges = gradient_to_edges(field, ThresholdSpec.absolute(1.0))
        assert sorted(zip(*np.nonzero(edges.bits))) == [(2, 2)]

    def test_zero_magnitude_is_never_an_edge(self):
        edges = gradient_to_edges(self.field({}), ThresholdSpec.absolute(0.0))
        assert edges.white_count == 0

    def test_vertical_step_gives_two_columns(self, step_image):
        image = step_image(size=16, at=8)
        edges = gradient_to_edges(sobel(image), ThresholdSpec.fraction(0.2))
        columns = set(np.nonzero(edges.bits)[1])
        assert columns == {7, 8}


class TestLaplacianOfGaussian:
    def test_kernel_sums_to_zero(self):
        for sigma in (0.5, 1.0, 1.4, 2.0):
            assert log_kernel(sigma).weights.sum() == pytest.approx(0.0, abs=1e-12)

    def test_kernel_size(self):
        assert log_kernel(1.0).size == 7
        assert log_kernel(1.4).size == 11

    def test_kernel_center_is_negative(self):
        kernel = log_kernel(1.0)
        assert kernel.weights[kernel.radius, kernel.radius] < 0

    def test_sigma_must_be_positive(self):
        with pytest.raises(ParameterError):
            log_kernel(0.0)

    def test_step_edge_stays_near_step(self, step_image):
        s = 16
        edges = log_detect(step_image(size=32, at=s), 1.0)
        rows, columns = np.nonzero(edges.bits)
        assert len(rows) > 0
        assert columns.min() >= s - 2
        assert columns.max() <= s + 1

    def test_zero_crossings_marks_nearer_zero(self):
        response = np.array([[5.0, -1.0, -4.0]])
        marks = zero_crossings(response, ThresholdSpec.absolute(1.0))
        assert marks.tolist() == [[False, True, False]]

    def test_zero_crossings_flat_response(self):
        marks = zero_crossings(np.zeros((4, 4)), ThresholdSpec.fraction(0.0))
        assert not marks.any()


@pytest.mark.parametrize('name', DETECTOR_NAMES)
def test_constant_image_has_no_edges(name, constant_image):
    detector = build_detector(name)
    for value in (0.0, 100.0, 255.0):
        edge_map = detector(constant_image(value, 64))
        assert edge_map.shape == (64, 64)
        assert edge_map.white_count == 0


def test_unknown_detector():
    with pytest.raises(KeyError):
        build_detector('hough')


@pytest.mark.parametrize('pixels, gx, gy', [([[10, 0], [0, 0]], 10.0, 0.0), ([[5, 1], [1, 5]], 0.0, 0.0)])
def test_roberts_worked_examples(pixels, gx, gy):
    field = roberts(Image(np.array(pixels, dtype=np.float64)))
    assert (field.gx[0, 0], field.gy[0, 0]) == (gx, gy)


@pytest.mark.parametrize('operator, expected', [(lambda image: prewitt(image, 1.0), 30.0),
                                                (lambda image: prewitt(image, 2.0), 40.0),
                                                (sobel, 40.0)])
def test_column_step_window(operator, expected):
    field = operator(Image(np.array([[0, 0, 10]] * 3, dtype=np.float64)))
    assert field.gy[1, 1] == expected
    assert field.gx[1, 1] == 0.0
