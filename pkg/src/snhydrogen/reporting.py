"""Deterministic report (JSON) and density profile (CSV) writers."""

from __future__ import annotations

import json
from decimal import ROUND_HALF_EVEN, Decimal
from pathlib import Path

from . import __version__
from .constants import CODATA2018, PhysicalConstants
from .spectroscopy import SpectroscopyReport

__all__ = ["five_significant", "emit_density_csv", "emit_report_json", "report_document"]

CSV_HEADER = "r_bohr,F_per_bohr"


def five_significant(x: float) -> str:
    """Render ``x`` with 5 significant figures, round-half-even, trailing zeros kept.

    >>> five_significant(-1.04097)
    '-1.0410'
    """
    d = Decimal(repr(float(x)))
    if d == 0:
        return "0.0000"
    quantum = Decimal(1).scaleb(d.adjusted() - 4)
    return format(d.quantize(quantum, rounding=ROUND_HALF_EVEN), "f")


def emit_density_csv(result, path) -> Path:
    """Write F(r) = 4 pi |phi|^2 at every grid node, one row per node."""
    path = Path(path)
    rows = [CSV_HEADER]
    rows.extend(f"{r!r},{f!r}" for r, f in zip(result.grid.nodes.tolist(), result.density.tolist()))
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(rows) + "\n")
    return path


def _level_block(result, experimental, fixed_point_shift) -> dict:
    grid = result.grid
    return {
        "level": result.level,
        "energy_hartree": result.energy_hartree,
        "energy_ev": result.energy_ev,
        "energy_ev_5sf": five_significant(result.energy_ev),
        "experimental_ev": experimental,
        "iterations": result.iterations,
        "converged": result.converged,
        "final_residual_hartree": result.final_residual,
        "fixed_point_shift_hartree": fixed_point_shift,
        "node_count": result.node_count,
        "peak_radius_bohr": result.peak_radius(),
        "energy_history_hartree": list(result.energy_history),
        "r_max_bohr": grid.r_max,
        "grid_points": grid.n,
    }


def report_document(
    results,
    report: SpectroscopyReport,
    *,
    run_config: dict | None = None,
    constants: PhysicalConstants = CODATA2018,
    fixed_point_shifts: dict[int, float] | None = None,
    failures: dict[int, str] | None = None,
) -> dict:
    fixed_point_shifts = fixed_point_shifts or {}
    experimental = {entry.index: entry.experimental_ev for entry in report.levels}
    levels = [
        _level_block(r, experimental.get(r.level), fixed_point_shifts.get(r.level))
        for r in sorted(results, key=lambda r: r.level)
    ]
    for level, message in sorted((failures or {}).items()):
        levels.append({"level": level, "converged": False, "error": message})
    levels.sort(key=lambda block: block["level"])
    return {
        "levels": levels,
        "transitions": [
            {
                "n_initial": t.n_initial,
                "n_final": t.n_final,
                "gap_ev": t.gap_ev,
                "gap_ev_5sf": five_significant(t.gap_ev),
                "experimental_gap_ev": t.experimental_gap_ev,
            }
            for t in report.transitions
        ],
        "bohr_deviations": [{"level": n, "deviation": dev} for n, dev in report.bohr_deviations],
        "gravity_ratio": report.gravity_ratio,
        "provenance": {
            "code_version": f"snhydrogen {__version__}",
            "config": run_config or {},
            "constants": constants.as_dict(),
        },
    }


def emit_report_json(document: dict, path) -> Path:
    """Sorted keys, shortest round-trip float repr, LF, trailing newline."""
    path = Path(path)
    text = json.dumps(document, sort_keys=True, indent=2, allow_nan=False)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text + "\n")
    return path
