import logging
from pathlib import Path
from typing import List, Sequence

from bench.errors import OutputError
from bench.runner import BatchSummary
from metrics.models import format_metric

logger = logging.getLogger(__name__)

# (header, aggregate metric) pairs of the performance table
PERFORMANCE_COLUMNS = (
    ('e_RMS', 'e_rms'),
    ('SNR_RMS', 'snr_rms'),
    ('SNR_AVERAGE', 'snr_avg'),
    ('SNR_PEAK', 'snr_peak'),
    ('CII', 'cii'),
)


def _markdown(header: Sequence[str], rows: List[Sequence[str]]) -> List[str]:
    lines = ['| ' + ' | '.join(header) + ' |',
             '|' + '|'.join(['---'] + ['---:'] * (len(header) - 1)) + '|']
    lines.extend('| ' + ' | '.join(row) + ' |' for row in rows)
    return lines


def render_tables(summary: BatchSummary) -> str:
    """Markdown performance-rate and white-pixel tables"""
    if not summary.reports:
        raise ValueError("Cannot render tables for an empty batch")

    lines = [f"## Performance rates of edge detectors ({len(summary.image_ids)} images)", '']
    rows = []
    for aggregate in summary.aggregates:
        rows.append([aggregate.detector] + [format_metric(aggregate.means[key], 2)
                                            for _, key in PERFORMANCE_COLUMNS])
    lines += _markdown(['Edge detector'] + [header for header, _ in PERFORMANCE_COLUMNS], rows)

    excluded = [f"{row.detector} ({row.excluded})" for row in summary.aggregates if row.excluded]
    if excluded:
        lines += ['', f"inf/nan values are left out of the means above; images affected: {', '.join(excluded)}"]

    lines += ['', '## Percentage of white pixels', '']
    header = ['Edge detector']
    for image_id in summary.image_ids:
        header += [f"{image_id} count", f"{image_id} %"]

    by_key = {(report.detector, report.image_id): report for report in summary.reports}
    rows = []
    for detector in summary.detectors:
        row = [detector]
        for image_id in summary.image_ids:
            report = by_key.get((detector, image_id))
            if report is None:
                row += ['-', '-']
            else:
                row += [str(report.white_count), format_metric(report.white_percent, 2)]
        rows.append(row)
    lines += _markdown(header, rows)

    return '\n'.join(lines) + '\n'


def write_tables(summary: BatchSummary, output_dir) -> Path:
    path = Path(output_dir) / 'tables.md'
    try:
        path.write_text(render_tables(summary), encoding='utf-8')
    except OSError as e:
        raise OutputError(f"Cannot write {path}: {e}")
    logger.info(f"Wrote {path}")
    return path
