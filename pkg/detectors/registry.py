import copy
import logging
from typing import Any, Callable, Dict

from detectors.canny import GaussianSpec, canny
from detectors.classical import (ThresholdMode, ThresholdSpec, gradient_to_edges, log_detect, log_kernel,
                                 prewitt, roberts, sobel)
from detectors.fuzzy import (Fuzzifier, FuzzyRuleSet, MembershipKind, SdgdParams, fuzzy_canny, fuzzy_detect,
                             fuzzy_relative_pixel, sdgd)
from raster.errors import ParameterError
from raster.image import EdgeMap, Image

logger = logging.getLogger(__name__)

Detector = Callable[[Image], EdgeMap]
Settings = Dict[str, Dict[str, Any]]

# Benchmark order; also the row order of every report
DETECTOR_NAMES = (
    'roberts', 'prewitt', 'sobel', 'log', 'canny',
    'fuzzy', 'fuzzy_canny', 'fuzzy_relative_pixel', 'sdgd',
)

_THRESHOLD = {'threshold': 0.20, 'threshold_mode': ThresholdMode.FRACTION.value}
_CANNY = {'sigma': 1.4, 'size': 5, 'hysteresis': False, 'low_ratio': 0.5, **_THRESHOLD}

DEFAULT_SETTINGS: Settings = {
    'roberts': dict(_THRESHOLD),
    'prewitt': {'c': 1.0, **_THRESHOLD},
    'sobel': dict(_THRESHOLD),
    'log': {'sigma': 1.0, **_THRESHOLD},
    'canny': dict(_CANNY),
    'fuzzy': {'contrast_scale': 50.0, 'cut': 0.5, 'membership': MembershipKind.LINEAR.value},
    'fuzzy_canny': {'membership': MembershipKind.LINEAR.value, **_CANNY},
    'fuzzy_relative_pixel': {'contrast_scale': 8.0, 'edge_threshold': 0.5},
    'sdgd': {'grad_threshold': 100.0, 'std_threshold': 6.0, 'decision_cut': 0.5,
             'membership': MembershipKind.LINEAR.value},
    'fuzzifier': {'s_low': 0.0, 's_high': 255.0},
}


def default_settings() -> Settings:
    return copy.deepcopy(DEFAULT_SETTINGS)


def _threshold(params: Dict[str, Any]) -> ThresholdSpec:
    return ThresholdSpec(ThresholdMode(params['threshold_mode']), params['threshold'])


def _gaussian(params: Dict[str, Any]) -> GaussianSpec:
    return GaussianSpec(params['sigma'], params['size'])


def _check_low_ratio(params: Dict[str, Any]):
    if not 0 < params['low_ratio'] <= 1:
        raise ParameterError(f"low_ratio must lie in (0, 1], got {params['low_ratio']}")


def _fuzzifier(params: Dict[str, Any], settings: Settings) -> Fuzzifier:
    shared = settings['fuzzifier']
    return Fuzzifier(MembershipKind(params['membership']), shared['s_low'], shared['s_high'])


def _roberts(params, settings) -> Detector:
    thresh = _threshold(params)
    return lambda image: gradient_to_edges(roberts(image), thresh)


def _prewitt(params, settings) -> Detector:
    thresh = _threshold(params)
    c = params['c']
    if c <= 0:
        raise ParameterError(f"Prewitt constant c must be positive, got {c}")
    return lambda image: gradient_to_edges(prewitt(image, c), thresh)


def _sobel(params, settings) -> Detector:
    thresh = _threshold(params)
    return lambda image: gradient_to_edges(sobel(image), thresh)


def _log(params, settings) -> Detector:
    thresh = _threshold(params)
    sigma = params['sigma']
    log_kernel(sigma)  # raises on a bad sigma
    return lambda image: log_detect(image, sigma, thresh)


def _canny(params, settings) -> Detector:
    spec, thresh = _gaussian(params), _threshold(params)
    _check_low_ratio(params)
    return lambda image: canny(image, spec, thresh, params['hysteresis'], params['low_ratio'])


def _fuzzy(params, settings) -> Detector:
    if params['contrast_scale'] <= 0 or not 0 <= params['cut'] <= 1:
        raise ParameterError(f"fuzzy needs contrast_scale > 0 and cut in [0, 1], got "
                             f"{params['contrast_scale']}, {params['cut']}")
    fuzzifier = _fuzzifier(params, settings)
    return lambda image: fuzzy_detect(image, params['contrast_scale'], params['cut'], fuzzifier)


def _fuzzy_canny(params, settings) -> Detector:
    spec, thresh = _gaussian(params), _threshold(params)
    _check_low_ratio(params)
    fuzzifier = _fuzzifier(params, settings)
    return lambda image: fuzzy_canny(image, spec, thresh, fuzzifier, params['hysteresis'], params['low_ratio'])


def _fuzzy_relative_pixel(params, settings) -> Detector:
    rules = FuzzyRuleSet(edge_threshold=params['edge_threshold'], contrast_scale=params['contrast_scale'])
    return lambda image: fuzzy_relative_pixel(image, rules)


def _sdgd(params, settings) -> Detector:
    sdgd_params = SdgdParams(params['grad_threshold'], params['std_threshold'], params['decision_cut'])
    fuzzifier = _fuzzifier(params, settings)
    return lambda image: sdgd(image, sdgd_params, fuzzifier)


_BUILDERS = {
    'roberts': _roberts,
    'prewitt': _prewitt,
    'sobel': _sobel,
    'log': _log,
    'canny': _canny,
    'fuzzy': _fuzzy,
    'fuzzy_canny': _fuzzy_canny,
    'fuzzy_relative_pixel': _fuzzy_relative_pixel,
    'sdgd': _sdgd,
}


def build_detector(name: str, settings: Settings = None) -> Detector:
    """Configured detector callable; parameter problems raise ParameterError/ValueError here"""
    if name not in _BUILDERS:
        raise KeyError(f"Unknown detector: {name}")
    settings = settings or DEFAULT_SETTINGS
    return _BUILDERS[name](settings[name], settings)
