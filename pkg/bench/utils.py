import re

_UNSAFE = re.compile(r'[<>:"/\\|?*\x00-\x1f]')
_SPACE = re.compile(r'\s+')


def sanitize_filename(name: str, limit: int = 255) -> str:
    """Image id or detector name made safe as a path component"""
    cleaned = _UNSAFE.sub('_', name).strip(' .')[:limit]
    return cleaned or '_'


def format_duration(seconds: float) -> str:
    if seconds < 1:
        return f"{seconds * 1000:.0f}ms"
    if seconds < 60:
        return f"{seconds:.1f}s"

    minutes, secs = divmod(int(seconds), 60)
    if minutes < 60:
        return f"{minutes}m {secs}s"
    hours, minutes = divmod(minutes, 60)
    return f"{hours}h {minutes}m" if minutes else f"{hours}h"


def truncate_text(text: str, max_length: int = 200) -> str:
    """Single-line message for a CSV cell, cut with an ellipsis past max_length"""
    flat = _SPACE.sub(' ', text).strip()
    return flat if len(flat) <= max_length else flat[:max_length - 3] + '...'
