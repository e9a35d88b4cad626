"""CSV data behind the momentum-distribution figures.

Figure 1: |Q_00|^2 with the variance-matched oscillator ground state.
Figure 2: |Q_3m|^2 for m = 0..3, whose node counts are 3, 2, 1, 0.
Figure 3: |Q_10,0|^2 with the variance-matched tenth oscillator state.
"""

from __future__ import annotations

import logging
import os

import numpy as np

from geomomentum.momentum_rep.oscillator import ho_momentum_density, variance_matched_beta
from geomomentum.momentum_rep.properties import (
    MomentumGrid,
    amplitude_table,
    count_sign_changes,
    real_amplitude,
)
from geomomentum.sinks.csv_file import CsvSink

logger = logging.getLogger(__name__)

FIGURE_GRID = {"kmax": 20.0, "step": 0.02}


def _write_curve(path: str, k: np.ndarray, density: np.ndarray) -> None:
    with open(path, "w", encoding="utf-8", newline="") as f:
        CsvSink(f).write_table(["k", "density"], zip(k.tolist(), density.tolist()))


def _rotor_curve(output_dir: str, filename: str, l: int, m: int, grid: MomentumGrid) -> dict:  # noqa: E741
    table = amplitude_table(l, m, grid)
    path = os.path.join(output_dir, filename)
    _write_curve(path, grid.k_values, table.density)
    return {
        "file": filename,
        "curve": "rotor",
        "l": l,
        "m": m,
        "source": table.source,
        "nodes": count_sign_changes(real_amplitude(l, m, table.values)),
    }


def _oscillator_curve(output_dir: str, filename: str, l: int, n: int, grid: MomentumGrid) -> dict:  # noqa: E741
    beta = variance_matched_beta(l, n)
    path = os.path.join(output_dir, filename)
    _write_curve(path, grid.k_values, ho_momentum_density(n, grid.k_values, beta))
    return {"file": filename, "curve": "oscillator", "n": n, "beta": beta}


def reproduce_figure(figure_id: int, output_dir: str, grid: MomentumGrid | None = None) -> list[dict]:
    """Write the CSV curves of one figure into *output_dir*.

    Returns one descriptor per file, in a fixed order.
    """
    grid = MomentumGrid.uniform(**FIGURE_GRID) if grid is None else grid
    os.makedirs(output_dir, exist_ok=True)

    if figure_id == 1:
        curves = [
            _rotor_curve(output_dir, "figure1_q_0_0.csv", 0, 0, grid),
            _oscillator_curve(output_dir, "figure1_oscillator_n0.csv", 0, 0, grid),
        ]
    elif figure_id == 2:
        curves = [_rotor_curve(output_dir, f"figure2_q_3_{m}.csv", 3, m, grid) for m in range(4)]
    elif figure_id == 3:
        curves = [
            _rotor_curve(output_dir, "figure3_q_10_0.csv", 10, 0, grid),
            _oscillator_curve(output_dir, "figure3_oscillator_n10.csv", 10, 10, grid),
        ]
    else:
        raise ValueError(f"unknown figure id {figure_id!r}; expected 1, 2 or 3")

    logger.info("Figure %d: wrote %d files to %s", figure_id, len(curves), output_dir)
    return curves
