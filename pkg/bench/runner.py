import fnmatch
import logging
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Tuple

import numpy as np
import pandas as pd
from tqdm import tqdm

from bench.errors import DatasetError, OutputError
from bench.run_config import RunConfig
from bench.utils import format_duration, sanitize_filename, truncate_text
from detectors.registry import Detector
from metrics.models import METRIC_COLUMNS, REPORT_COLUMNS, MetricReport, format_metric
from raster.pgm import read_pgm, write_pgm

logger = logging.getLogger(__name__)

AGGREGATE_COLUMNS = ('detector', 'images') + METRIC_COLUMNS + ('white_count', 'white_percent', 'excluded')
ERROR_COLUMNS = ('image_id', 'detector', 'message')


@dataclass(frozen=True)
class ImageEntry:
    image_id: str
    path: Path


@dataclass(frozen=True)
class RowError:
    image_id: str
    detector: str
    message: str


@dataclass(frozen=True)
class AggregateRow:
    """Mean of each metric over a detector's images; sentinel values are left out"""
    detector: str
    images: int
    means: Dict[str, float]
    white_count: float
    white_percent: float
    excluded: int

    def to_row(self) -> Dict[str, str]:
        row = {'detector': self.detector, 'images': str(self.images)}
        for name in METRIC_COLUMNS:
            row[name] = format_metric(self.means[name])
        row['white_count'] = format_metric(self.white_count)
        row['white_percent'] = format_metric(self.white_percent)
        row['excluded'] = str(self.excluded)
        return row


@dataclass
class BatchSummary:
    image_ids: List[str]
    detectors: List[str]
    reports: List[MetricReport] = field(default_factory=list)
    aggregates: List[AggregateRow] = field(default_factory=list)
    errors: List[RowError] = field(default_factory=list)


def scan_dataset(input_dir, image_filter: Optional[str] = None) -> List[ImageEntry]:
    """Lexicographically ordered .pgm files, optionally filtered by a glob on the file name"""
    input_dir = Path(input_dir)
    if not input_dir.is_dir():
        raise DatasetError(f"Input directory does not exist: {input_dir}")

    entries = []
    for path in sorted(input_dir.iterdir(), key=lambda p: p.name):
        if not path.is_file() or path.suffix.lower() != '.pgm':
            continue
        if image_filter and not (fnmatch.fnmatchcase(path.name, image_filter)
                                 or fnmatch.fnmatchcase(path.stem, image_filter)):
            continue
        entries.append(ImageEntry(path.stem, path))

    if not entries:
        suffix = f" matching {image_filter!r}" if image_filter else ""
        raise DatasetError(f"No .pgm images{suffix} in {input_dir}")

    logger.info(f"Found {len(entries)} images in {input_dir}")
    return entries


def _mean(values: List[float]) -> float:
    return float(np.mean(values)) if values else math.nan


def aggregate(reports: List[MetricReport], detectors: List[str]) -> List[AggregateRow]:
    rows = []
    for detector in detectors:
        subset = [report for report in reports if report.detector == detector]
        if not subset:
            continue

        means = {}
        for name in METRIC_COLUMNS:
            finite = [getattr(report, name) for report in subset if math.isfinite(getattr(report, name))]
            means[name] = _mean(finite)

        excluded = sum(1 for report in subset if report.has_sentinel())
        if excluded:
            logger.warning(f"{detector}: inf/nan values of {excluded} image(s) left out of means")

        rows.append(AggregateRow(
            detector=detector,
            images=len(subset),
            means=means,
            white_count=_mean([report.white_count for report in subset]),
            white_percent=_mean([report.white_percent for report in subset]),
            excluded=excluded,
        ))
    return rows


def process_image(entry: ImageEntry, detectors: Dict[str, Detector], output_dir: Path,
                  denominator: Optional[int] = None) -> Tuple[List[MetricReport], List[RowError]]:
    """Run every detector on one image; row-level failures are recorded, output failures raise"""
    reports: List[MetricReport] = []
    errors: List[RowError] = []

    try:
        image = read_pgm(entry.path)
    except (OSError, ValueError) as e:
        logger.warning(f"Skipping unreadable image {entry.path.name}: {e}")
        message = truncate_text(str(e))
        return reports, [RowError(entry.image_id, name, message) for name in detectors]

    for name, detector in detectors.items():
        started = time.perf_counter()
        try:
            edge_map = detector(image)
            report = MetricReport.evaluate(name, entry.image_id, image, edge_map, denominator)
        except Exception as e:
            logger.warning(f"{name} failed on {entry.image_id}: {e}")
            errors.append(RowError(entry.image_id, name, truncate_text(str(e))))
            continue

        target = output_dir / sanitize_filename(name) / f"{sanitize_filename(entry.image_id)}.pgm"
        try:
            write_pgm(target, edge_map)
        except OSError as e:
            logger.error(f"Cannot write edge map {target}: {e}")
            raise OutputError(f"Cannot write edge map {target}: {e}")

        reports.append(report)
        logger.debug(f"{name} on {entry.image_id}: {report.white_count} edge pixels "
                     f"in {format_duration(time.perf_counter() - started)}")

    return reports, errors


def _write_csv(path: Path, rows: List[Dict[str, str]], columns):
    frame = pd.DataFrame(rows, columns=list(columns), dtype=str)
    try:
        frame.to_csv(path, index=False, lineterminator='\n')
    except OSError as e:
        logger.error(f"Cannot write {path}: {e}")
        raise OutputError(f"Cannot write {path}: {e}")


def write_reports(summary: BatchSummary, output_dir: Path):
    """per_image.csv, aggregate.csv and, when rows failed, errors.csv"""
    output_dir = Path(output_dir)
    _write_csv(output_dir / 'per_image.csv', [report.to_row() for report in summary.reports], REPORT_COLUMNS)
    _write_csv(output_dir / 'aggregate.csv', [row.to_row() for row in summary.aggregates], AGGREGATE_COLUMNS)

    errors_path = output_dir / 'errors.csv'
    if summary.errors:
        _write_csv(errors_path, [vars(error) for error in summary.errors], ERROR_COLUMNS)
    elif errors_path.exists():
        errors_path.unlink()

    logger.info(f"Wrote {len(summary.reports)} per-image rows and {len(summary.aggregates)} aggregate rows "
                f"to {output_dir}")


def run_batch(config: RunConfig) -> BatchSummary:
    """Detect, save edge maps and score every (image, detector) pair"""
    started = time.perf_counter()
    entries = scan_dataset(config.input_dir, config.image_filter)
    detectors = config.build_detectors()

    try:
        config.output_dir.mkdir(parents=True, exist_ok=True)
        for name in detectors:
            (config.output_dir / sanitize_filename(name)).mkdir(exist_ok=True)
    except OSError as e:
        logger.error(f"Cannot create output directory {config.output_dir}: {e}")
        raise OutputError(f"Cannot create output directory {config.output_dir}: {e}")

    logger.info(f"Running {len(detectors)} detectors over {len(entries)} images with {config.parallelism} worker(s)")

    summary = BatchSummary(image_ids=[entry.image_id for entry in entries], detectors=list(detectors))

    def work(entry: ImageEntry):
        return process_image(entry, detectors, config.output_dir, config.denominator)

    with ThreadPoolExecutor(max_workers=config.parallelism) as pool:
        # map yields in submission order, so assembly is independent of scheduling
        results = pool.map(work, entries)
        for reports, errors in tqdm(results, total=len(entries), desc="Images", unit="image"):
            summary.reports.extend(reports)
            summary.errors.extend(errors)

    summary.aggregates = aggregate(summary.reports, summary.detectors)
    write_reports(summary, config.output_dir)

    if summary.errors:
        logger.warning(f"{len(summary.errors)} row(s) failed; see errors.csv")

    logger.info(f"Batch finished in {format_duration(time.perf_counter() - started)}")
    return summary
