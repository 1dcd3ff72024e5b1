import math
from dataclasses import asdict, dataclass
from typing import Any, Dict, Optional

from metrics.quality import Raster, cii, e_rms, mse, snr_avg, snr_peak, snr_rms, white_pixel_stats
from raster.image import EdgeMap

REPORT_COLUMNS = (
    'detector', 'image_id', 'mse', 'e_rms', 'snr_rms', 'snr_avg', 'snr_peak', 'cii',
    'white_count', 'white_percent',
)

METRIC_COLUMNS = ('mse', 'e_rms', 'snr_rms', 'snr_avg', 'snr_peak', 'cii')


def format_metric(value: float, digits: Optional[int] = None) -> str:
    """Render a metric; infinite and undefined values become 'inf' / 'nan'"""
    if math.isnan(value):
        return 'nan'
    if math.isinf(value):
        return 'inf' if value > 0 else '-inf'
    if digits is None:
        return repr(float(value))
    return f"{value:.{digits}f}"


@dataclass(frozen=True)
class MetricReport:
    detector: str
    image_id: str
    mse: float
    e_rms: float
    snr_rms: float
    snr_avg: float
    snr_peak: float
    cii: float
    white_count: int
    white_percent: float

    @classmethod
    def evaluate(cls, detector: str, image_id: str, original: Raster, edge_map: EdgeMap,
                 denominator: Optional[int] = None) -> 'MetricReport':
        """Compare the original gray image with the 0/255 edge map"""
        count, percent = white_pixel_stats(edge_map, denominator)
        return cls(
            detector=detector,
            image_id=image_id,
            mse=mse(original, edge_map),
            e_rms=e_rms(original, edge_map),
            snr_rms=snr_rms(original, edge_map),
            snr_avg=snr_avg(original, edge_map),
            snr_peak=snr_peak(original, edge_map),
            cii=cii(edge_map),
            white_count=count,
            white_percent=percent,
        )

    def has_sentinel(self) -> bool:
        return not all(math.isfinite(getattr(self, name)) for name in METRIC_COLUMNS)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    def to_row(self) -> Dict[str, str]:
        """String-valued CSV row"""
        row = {'detector': self.detector, 'image_id': self.image_id}
        for name in METRIC_COLUMNS:
            row[name] = format_metric(getattr(self, name))
        row['white_count'] = str(self.white_count)
        row['white_percent'] = format_metric(self.white_percent)
        return row
