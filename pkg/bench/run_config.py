import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Optional, Tuple, Union

from bench.errors import ConfigError
from detectors.registry import DETECTOR_NAMES, Detector, Settings, build_detector, default_settings

logger = logging.getLogger(__name__)

_TRUE = ('true', 'yes', 'on', '1')
_FALSE = ('false', 'no', 'off', '0')


def _parse_value(key: str, raw: str, default: Any) -> Any:
    """Convert raw text to the type of the parameter's default"""
    text = raw.strip()
    try:
        if isinstance(default, bool):
            lowered = text.lower()
            if lowered in _TRUE:
                return True
            if lowered in _FALSE:
                return False
            raise ValueError(f"expected true/false, got {text!r}")
        if isinstance(default, int):
            return int(text)
        if isinstance(default, float):
            return float(text)
        return text.lower()
    except ValueError as e:
        raise ConfigError(f"Invalid value for {key}: {e}")


def _parse_denominator(raw: str) -> Optional[int]:
    text = raw.strip().lower()
    if text == 'full':
        return None
    try:
        value = int(text)
    except ValueError:
        raise ConfigError(f"metrics.denominator must be 'full' or a positive integer, got {raw!r}")
    if value <= 0:
        raise ConfigError(f"metrics.denominator must be positive, got {value}")
    return value


def parse_config_text(text: str, settings: Settings = None) -> Tuple[Settings, Optional[int]]:
    """Apply dotted key = value lines on top of the detector defaults"""
    settings = settings if settings is not None else default_settings()
    denominator = None

    for number, line in enumerate(text.splitlines(), start=1):
        line = line.split('#', 1)[0].strip()
        if not line:
            continue

        if '=' not in line:
            raise ConfigError(f"Line {number}: expected 'key = value', got {line!r}")

        key, raw = (part.strip() for part in line.split('=', 1))
        section, _, name = key.partition('.')

        if key == 'metrics.denominator':
            denominator = _parse_denominator(raw)
            continue

        if section not in settings or not name:
            raise ConfigError(f"Line {number}: unknown section in key {key!r}")
        if name not in settings[section]:
            raise ConfigError(f"Line {number}: unknown parameter {key!r}")

        settings[section][name] = _parse_value(key, raw, settings[section][name])

    return settings, denominator


def load_config_file(path: Union[str, Path]) -> Tuple[Settings, Optional[int]]:
    path = Path(path)
    try:
        text = path.read_text(encoding='utf-8')
    except OSError as e:
        raise ConfigError(f"Cannot read config file {path}: {e}")

    settings, denominator = parse_config_text(text)
    logger.info(f"Loaded run configuration from {path}")
    return settings, denominator


def parse_detector_list(text: str) -> Tuple[str, ...]:
    """Comma-separated detector names; 'all' selects every detector"""
    names = [name.strip().lower() for name in text.split(',') if name.strip()]
    if names == ['all']:
        return DETECTOR_NAMES
    return tuple(names)


@dataclass
class RunConfig:
    input_dir: Path
    output_dir: Path
    detectors: Tuple[str, ...]
    settings: Settings = field(default_factory=default_settings)
    image_filter: Optional[str] = None
    parallelism: int = 1
    denominator: Optional[int] = None
    write_tables: bool = False

    def __post_init__(self):
        self.input_dir = Path(self.input_dir)
        self.output_dir = Path(self.output_dir)
        self.detectors = tuple(self.detectors)

        if not self.detectors:
            raise ConfigError("At least one detector must be selected")

        unknown = [name for name in self.detectors if name not in DETECTOR_NAMES]
        if unknown:
            raise ConfigError(f"Unknown detectors: {', '.join(unknown)} "
                              f"(choose from {', '.join(DETECTOR_NAMES)})")

        if len(set(self.detectors)) != len(self.detectors):
            raise ConfigError("Detector list contains duplicates")

        if self.parallelism < 1:
            raise ConfigError(f"Parallelism must be at least 1, got {self.parallelism}")

        if self.denominator is not None and self.denominator <= 0:
            raise ConfigError(f"White-pixel denominator must be positive, got {self.denominator}")

    def build_detectors(self) -> Dict[str, Detector]:
        """Detector callables in report order"""
        built = {}
        for name in DETECTOR_NAMES:
            if name not in self.detectors:
                continue
            try:
                built[name] = build_detector(name, self.settings)
            except ValueError as e:
                raise ConfigError(f"Invalid parameters for {name}: {e}")
        return built
