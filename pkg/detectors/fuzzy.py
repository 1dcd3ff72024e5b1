"""
Fuzzy edge detectors.

All detectors work on gray levels in [0, 255]. Memberships are combined with
min (fuzzy AND) inside a rule and max (fuzzy OR) across rules. A pixel whose
combined membership is zero is never an edge, whatever the cut.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Tuple

import numpy as np
import skfuzzy as fuzz
from numpy.lib.stride_tricks import sliding_window_view

from detectors.canny import GaussianSpec, canny
from detectors.classical import ThresholdSpec, sobel
from raster.errors import ParameterError
from raster.image import MAX_VALUE, EdgeMap, Image
from raster.ops import edges_with_clear_border, neighbor_stack

logger = logging.getLogger(__name__)


class MembershipKind(Enum):
    LINEAR = "linear"
    S_CURVE = "s_curve"


@dataclass(frozen=True)
class Fuzzifier:
    kind: MembershipKind = MembershipKind.LINEAR
    s_low: float = 0.0
    s_high: float = float(MAX_VALUE)

    def __post_init__(self):
        if not isinstance(self.kind, MembershipKind):
            object.__setattr__(self, 'kind', MembershipKind(self.kind))
        if not 0 <= self.s_low < self.s_high <= MAX_VALUE:
            raise ParameterError(f"S-curve feet must satisfy 0 <= s_low < s_high <= {MAX_VALUE}, "
                                 f"got {self.s_low}, {self.s_high}")


LINEAR = Fuzzifier()


@dataclass(frozen=True, eq=False)
class MembershipField:
    mu: np.ndarray

    def __post_init__(self):
        mu = np.array(self.mu, dtype=np.float64)
        if mu.ndim != 2:
            raise ParameterError(f"Membership field must be 2-D, got shape {mu.shape}")
        if mu.size and (mu.min() < 0.0 or mu.max() > 1.0):
            raise ParameterError("Membership values must lie in [0, 1]")
        mu.setflags(write=False)
        object.__setattr__(self, 'mu', mu)

    @property
    def height(self) -> int:
        return self.mu.shape[0]

    @property
    def width(self) -> int:
        return self.mu.shape[1]


def fuzzify(image: Image, fuzzifier: Fuzzifier = LINEAR) -> MembershipField:
    """Map gray levels to membership in 'bright'"""
    pixels = image.pixels
    if fuzzifier.kind == MembershipKind.S_CURVE:
        mu = fuzz.smf(pixels.ravel(), fuzzifier.s_low, fuzzifier.s_high).reshape(pixels.shape)
    else:
        mu = pixels / MAX_VALUE
    return MembershipField(np.clip(mu, 0.0, 1.0))


def defuzzify(field: MembershipField) -> Image:
    """Scale memberships back to gray levels, snapped to a 1e-9 grid"""
    return Image.from_clipped(np.round(field.mu * MAX_VALUE, 9))


def _check_unit(name: str, value: float):
    if not 0.0 <= value <= 1.0:
        raise ParameterError(f"{name} must lie in [0, 1], got {value}")


def _check_positive(name: str, value: float):
    if value <= 0:
        raise ParameterError(f"{name} must be positive, got {value}")


def fuzzy_detect(image: Image, contrast_scale: float = 50.0, cut: float = 0.5,
                 fuzzifier: Fuzzifier = LINEAR) -> EdgeMap:
    """Edge where the strongest 3x3 membership contrast, scaled by d0, reaches the cut"""
    _check_positive('contrast_scale', contrast_scale)
    _check_unit('cut', cut)

    mu = fuzzify(image, fuzzifier).mu
    contrast = np.abs(neighbor_stack(mu) - mu).max(axis=0)
    membership = np.minimum(contrast * MAX_VALUE / contrast_scale, 1.0)
    return edges_with_clear_border((membership >= cut) & (membership > 0))


def fuzzy_canny(image: Image, spec: GaussianSpec = GaussianSpec(), thresh: ThresholdSpec = ThresholdSpec(),
                fuzzifier: Fuzzifier = LINEAR, hysteresis: bool = False, low_ratio: float = 0.5) -> EdgeMap:
    """Fuzzify, then smooth, gradient, suppress and threshold on the defuzzified raster"""
    raster = defuzzify(fuzzify(image, fuzzifier))
    return canny(raster, spec, thresh, hysteresis=hysteresis, low_ratio=low_ratio)


class Sign(Enum):
    BRIGHTER = "brighter"
    DARKER = "darker"
    DIFFERENT = "different"
    DONTCARE = "dontcare"


X = Sign.DONTCARE
B = Sign.BRIGHTER
D = Sign.DARKER
A = Sign.DIFFERENT


@dataclass(frozen=True)
class Template:
    """Sign pattern over the neighbors a0..a7 relative to the center"""
    name: str
    cells: Tuple[Sign, ...]

    def __post_init__(self):
        if len(self.cells) != 8:
            raise ParameterError(f"Template {self.name} needs 8 neighbor cells, got {len(self.cells)}")
        if all(cell == Sign.DONTCARE for cell in self.cells):
            raise ParameterError(f"Template {self.name} has no participating cells")

    def grid(self) -> Tuple[Tuple[str, str, str], ...]:
        """3x3 picture of the pattern, '+' brighter, '-' darker, '*' either, '.' don't care, 'c' center"""
        symbol = {Sign.BRIGHTER: '+', Sign.DARKER: '-', Sign.DIFFERENT: '*', Sign.DONTCARE: '.'}
        a = [symbol[cell] for cell in self.cells]
        return ((a[0], a[1], a[2]), (a[7], 'c', a[3]), (a[6], a[5], a[4]))


# Sides and corners fire on the darker side of a step; the isolated point fires on either polarity
#                          a0 a1 a2 a3 a4 a5 a6 a7
DEFAULT_TEMPLATES = (
    Template('side_n',    (B, B, B, X, X, X, X, X)),
    Template('side_e',    (X, X, B, B, B, X, X, X)),
    Template('side_s',    (X, X, X, X, B, B, B, X)),
    Template('side_w',    (B, X, X, X, X, X, B, B)),
    Template('corner_ne', (X, B, B, B, X, X, X, X)),
    Template('corner_se', (X, X, X, B, B, B, X, X)),
    Template('corner_sw', (X, X, X, X, X, B, B, B)),
    Template('corner_nw', (B, B, X, X, X, X, X, B)),
    Template('isolated',  (A, A, A, A, A, A, A, A)),
)


@dataclass(frozen=True)
class FuzzyRuleSet:
    templates: Tuple[Template, ...] = DEFAULT_TEMPLATES
    edge_threshold: float = 0.5
    contrast_scale: float = 8.0

    def __post_init__(self):
        if len(self.templates) != 9:
            raise ParameterError(f"Rule set needs exactly nine templates, got {len(self.templates)}")
        _check_unit('edge_threshold', self.edge_threshold)
        _check_positive('contrast_scale', self.contrast_scale)


def relative_pixel_membership(image: Image, rules: FuzzyRuleSet = FuzzyRuleSet()) -> np.ndarray:
    """Max over templates of the min over participating cells of the signed contrast ramp"""
    pixels = image.pixels
    neighbors = neighbor_stack(pixels)
    brighter = np.clip((neighbors - pixels) / rules.contrast_scale, 0.0, 1.0)
    darker = np.clip((pixels - neighbors) / rules.contrast_scale, 0.0, 1.0)
    ramps = {Sign.BRIGHTER: brighter, Sign.DARKER: darker, Sign.DIFFERENT: np.maximum(brighter, darker)}

    best = np.zeros(pixels.shape)
    for template in rules.templates:
        membership = np.ones(pixels.shape)
        for index, cell in enumerate(template.cells):
            if cell != Sign.DONTCARE:
                membership = np.minimum(membership, ramps[cell][index])
        best = np.maximum(best, membership)

    return best


def relative_pixel_intermediate(image: Image, rules: FuzzyRuleSet = FuzzyRuleSet()) -> EdgeMap:
    """Edge map before unwanted-edge removal"""
    membership = relative_pixel_membership(image, rules)
    return edges_with_clear_border((membership >= rules.edge_threshold) & (membership > 0))


def remove_unwanted(edge_map: EdgeMap) -> EdgeMap:
    """Clear every edge pixel anchoring a solid 2x2 block; one pass over a snapshot"""
    bits = edge_map.bits
    padded = np.pad(bits, ((0, 1), (0, 1)), mode='constant', constant_values=False)
    block = bits & padded[:-1, 1:] & padded[1:, :-1] & padded[1:, 1:]
    return EdgeMap(bits & ~block)


def fuzzy_relative_pixel(image: Image, rules: FuzzyRuleSet = FuzzyRuleSet()) -> EdgeMap:
    """
    Fuzzy relative pixel detector.

    Every 3x3 window centered inside the frame is tested against the nine
    templates; the resulting intermediate map is then cleaned once with
    remove_unwanted. Windows are evaluated independently, so the result does
    not depend on scan order.
    """
    intermediate = relative_pixel_intermediate(image, rules)
    cleaned = remove_unwanted(intermediate)
    logger.debug(f"Relative pixel: {intermediate.white_count} intermediate, "
                 f"{intermediate.white_count - cleaned.white_count} removed")
    return cleaned


def local_stddev(image: Image, radius: int = 1) -> np.ndarray:
    """Population standard deviation over the replicate-bordered (2r+1)^2 window"""
    if radius < 1:
        raise ParameterError(f"Window radius must be at least 1, got {radius}")
    size = 2 * radius + 1
    padded = np.pad(image.pixels, radius, mode='edge')
    return sliding_window_view(padded, (size, size)).std(axis=(-2, -1))


@dataclass(frozen=True)
class SdgdParams:
    grad_threshold: float = 100.0
    std_threshold: float = 6.0
    decision_cut: float = 0.5

    def __post_init__(self):
        _check_positive('grad_threshold', self.grad_threshold)
        _check_positive('std_threshold', self.std_threshold)
        _check_unit('decision_cut', self.decision_cut)


def sdgd_memberships(image: Image, params: SdgdParams = SdgdParams(),
                     fuzzifier: Fuzzifier = LINEAR) -> Tuple[np.ndarray, np.ndarray]:
    """Gradient and standard-deviation memberships of the defuzzified raster"""
    raster = defuzzify(fuzzify(image, fuzzifier))
    gradient = sobel(raster).magnitude
    deviation = local_stddev(raster)
    mu_g = np.clip(gradient / params.grad_threshold, 0.0, 1.0)
    mu_s = np.clip(deviation / params.std_threshold, 0.0, 1.0)
    return mu_g, mu_s


def sdgd(image: Image, params: SdgdParams = SdgdParams(), fuzzifier: Fuzzifier = LINEAR) -> EdgeMap:
    """Fuse gradient and local deviation evidence with fuzzy OR"""
    mu_g, mu_s = sdgd_memberships(image, params, fuzzifier)
    membership = np.maximum(mu_g, mu_s)
    return edges_with_clear_border((membership >= params.decision_cut) & (membership > 0))
