"""Argument checks run by the CLI before any computation.

Each validator returns None if valid, or an error message string. The CLI
turns messages into usage errors (exit 2).
"""

import math

from geomomentum.exceptions import GeomomentumError
from geomomentum.surfaces.registry import parse_surface

MAX_L = 60
MAX_GRID_POINTS = 200_001
FIGURE_IDS = (1, 2, 3)


def validate_index(l: int, m: int) -> str | None:  # noqa: E741
    if l < 0:
        return f"l must be >= 0, got {l}"
    if l > MAX_L:
        return f"l must be <= {MAX_L}, got {l}"
    if abs(m) > l:
        return f"|m| must be <= l, got l={l}, m={m}"
    return None


def validate_grid(kmax: float, step: float) -> str | None:
    if not (math.isfinite(kmax) and kmax > 0):
        return f"kmax must be a positive number, got {kmax}"
    if not (math.isfinite(step) and step > 0):
        return f"step must be a positive number, got {step}"
    if step > kmax:
        return f"step {step} exceeds kmax {kmax}"
    if 2 * kmax / step + 1 > MAX_GRID_POINTS:
        return f"grid of {int(2 * kmax / step) + 1} points exceeds {MAX_GRID_POINTS}"
    return None


def validate_truncation(l_max: int, l_interior: int | None = None) -> str | None:
    if l_max < 2:
        return f"lmax must be >= 2, got {l_max}"
    if l_max > MAX_L:
        return f"lmax must be <= {MAX_L}, got {l_max}"
    if l_interior is not None and not 0 <= l_interior <= l_max - 2:
        return f"interior must lie in [0, lmax - 2] = [0, {l_max - 2}], got {l_interior}"
    return None


def validate_positive(label: str, value: float) -> str | None:
    if not value > 0:
        return f"{label} must be > 0, got {value}"
    return None


def validate_surface(spec: str) -> str | None:
    try:
        parse_surface(spec)
    except GeomomentumError as exc:
        return str(exc)
    return None


def validate_figure_id(figure_id: int) -> str | None:
    if figure_id not in FIGURE_IDS:
        return f"figure id must be one of {', '.join(map(str, FIGURE_IDS))}, got {figure_id}"
    return None
