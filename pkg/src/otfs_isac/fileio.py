"""Writers for the CLI's output files: CSV matrices, plain PGM heatmaps,
peak reports, and sweep curves. All floats use round-trip-safe precision."""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .grid import C_LIGHT
from .maps import RadarMap
from .metrics import PeakReport

PGM_DB_MIN = -60.0
PGM_DB_MAX = 0.0


def fmt(value) -> str:
    if isinstance(value, (complex, np.complexfloating)):
        return f"{value.real:.17g}{value.imag:+.17g}j"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return f"{float(value):.17g}"


def write_matrix_csv(path, matrix) -> None:
    matrix = np.asarray(matrix)
    with open(path, "w") as fh:
        for row in matrix:
            fh.write(",".join(fmt(v) for v in row))
            fh.write("\n")


def write_map_csv(path, rmap: RadarMap) -> None:
    write_matrix_csv(path, rmap.magnitude_db)


def write_map_pgm(path, rmap: RadarMap) -> None:
    """Plain (P2) PGM, dB scale clamped to [-60, 0] mapped onto 0..255."""
    db = np.clip(rmap.magnitude_db, PGM_DB_MIN, PGM_DB_MAX)
    pixels = np.rint((db - PGM_DB_MIN) / (PGM_DB_MAX - PGM_DB_MIN) * 255).astype(int)
    rows, cols = pixels.shape
    with open(path, "w") as fh:
        fh.write("P2\n")
        fh.write(f"# delay-Doppler map, {rmap.method}, dB clamped to [{PGM_DB_MIN:g}, {PGM_DB_MAX:g}]\n")
        fh.write(f"{cols} {rows}\n255\n")
        for row in pixels:
            for start in range(0, cols, 16):
                fh.write(" ".join(str(v) for v in row[start:start + 16]))
                fh.write("\n")


def write_peaks_csv(path, rmap: RadarMap, report: PeakReport, fc: float) -> None:
    with open(path, "w") as fh:
        fh.write(f"# method = {rmap.method}\n")
        fh.write(f"# floor_rms_db = {fmt(report.floor_rms_db)}\n")
        fh.write(f"# output_snr_db = {fmt(report.output_snr_db)}\n")
        fh.write("delay_bin,doppler_bin,level_db,delay_s,doppler_hz,range_m,velocity_mps\n")
        for p in report.peaks:
            delay_s = rmap.delay_axis_s[p.delay_bin]
            doppler_hz = rmap.doppler_axis_hz[p.doppler_bin]
            range_m = delay_s * C_LIGHT / 2.0
            velocity = doppler_hz * C_LIGHT / (2.0 * fc)
            fh.write(
                ",".join(
                    [str(p.delay_bin), str(p.doppler_bin), fmt(p.level_db),
                     fmt(delay_s), fmt(doppler_hz), fmt(range_m), fmt(velocity)]
                )
            )
            fh.write("\n")


CURVE_COLUMNS = (
    "method,snr_db,integration_time_s,vmax_mps,"
    "floor_rms_db_mean,floor_rms_db_std,output_snr_db_mean,output_snr_db_std"
)


def write_curves_csv(path, rows: list[dict]) -> None:
    with open(path, "w") as fh:
        fh.write(CURVE_COLUMNS + "\n")
        for r in rows:
            fh.write(
                ",".join(
                    [
                        r["method"],
                        fmt(r["snr_db"]),
                        fmt(r["integration_time_s"]),
                        fmt(r["vmax_mps"]),
                        fmt(r["floor_rms_db_mean"]),
                        fmt(r["floor_rms_db_std"]),
                        fmt(r["output_snr_db_mean"]),
                        fmt(r["output_snr_db_std"]),
                    ]
                )
            )
            fh.write("\n")


def write_lines(path, lines: list[str]) -> None:
    Path(path).write_text("\n".join(lines) + "\n")
