"""Pilot-based radar: CIR snapshots from every pilot occurrence, then a
row-wise Zak transform of the tap history into a delay-Doppler map.

For the RP layout every slow-time column carries the same known OFDM
pilot, so a least-squares (divide) estimator yields one P-tap CIR per
column; a moving reflector shows up as a tap rotating at its Doppler
frequency across columns. The cyclic prefix never enters the processing
chain, which is why this map has no pilot-repetition ghost peaks.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grid import GridConfig, zak
from .maps import RadarMap
from .modem import RpPilot, TxRecord, ZpPilot
from .validation import as_complex_matrix, as_stream


@dataclass(frozen=True)
class CirMatrix:
    """CIR tap history: P tap rows by one column per pilot occurrence.

    column_period_s is the snapshot spacing M/fs (one column per
    slow-time column of the frame grid).
    """

    taps: np.ndarray
    column_period_s: float

    def __post_init__(self):
        if self.taps.ndim != 2:
            raise ValueError("taps must be 2-D (taps x columns)")
        if not self.column_period_s > 0:
            raise ValueError("column_period_s must be > 0")

    @property
    def n_columns(self) -> int:
        return self.taps.shape[1]


def estimate_cir_rp(rx, record: TxRecord) -> CirMatrix:
    """One least-squares CIR snapshot per slow-time column of an RP capture.

    Assumes perfect frame synchronization: rx[0] is the first transmitted
    sample. Per column, the P symbol samples (CP skipped) are DFT'd,
    divided by the known pilot spectrum and inverse-DFT'd into P taps.
    """
    if not isinstance(record.scheme, RpPilot):
        raise TypeError("estimate_cir_rp needs an RP transmit record")
    cfg = record.cfg
    scheme = record.scheme
    rx = as_stream(rx, "rx")
    needed = record.n_frames * cfg.frame_samples
    if rx.size < needed:
        raise ValueError(f"rx has {rx.size} samples, capture needs {needed}")
    p = scheme.sym_len
    spectrum = scheme.spectrum()
    # 4-QAM carriers all have unit magnitude, so the division is safe.
    assert np.abs(spectrum).min() > 0.5

    n_cols = record.n_frames * cfg.n
    columns = rx[:needed].reshape(n_cols, cfg.m)
    symbol_samples = columns[:, p:2 * p]
    estimates = np.fft.ifft(np.fft.fft(symbol_samples, axis=1) / spectrum[None, :], axis=1)
    return CirMatrix(taps=estimates.T.copy(), column_period_s=cfg.m / cfg.fs)


def estimate_cir_zp(rx_tt, scheme: ZpPilot, threshold_db: float = -np.inf, cfg: GridConfig | None = None) -> np.ndarray:
    """Single-frame ZP estimate: received DD pilot zone divided by the pulse.

    Cells whose received magnitude sits more than ``threshold_db`` below
    the zone peak are zeroed (``-inf`` disables the threshold). Returns
    the (zone_rows, N) complex estimate; the target appears at its
    (delay, Doppler) offset from the pulse position.
    """
    if not isinstance(scheme, ZpPilot):
        raise TypeError("estimate_cir_zp needs a ZpPilot scheme")
    rx_tt = as_complex_matrix(rx_tt, "rx_tt", (cfg.m, cfg.n) if cfg else None)
    zone = zak(rx_tt[: scheme.zone_rows, :])
    estimate = zone / scheme.pulse_amplitude
    if np.isfinite(threshold_db):
        peak = np.abs(zone).max()
        if peak > 0:
            estimate = np.where(np.abs(zone) >= peak * 10.0 ** (threshold_db / 20.0), estimate, 0.0)
    return estimate


def cir_to_dd_map(cir: CirMatrix, fs: float, zero_pad: int = 0, window: str = "none") -> RadarMap:
    """Forward DFT along each tap row, Doppler-centered and peak-normalized.

    ``zero_pad`` appends that many zero columns before the transform
    (finer Doppler sampling, unchanged resolution). The optional Hann
    window tapers the column history of every tap row.
    """
    if cir.taps.size == 0:
        raise ValueError("empty CIR matrix")
    if zero_pad < 0:
        raise ValueError("zero_pad must be >= 0")
    taps = cir.taps
    n_cols = cir.n_columns
    if window == "hann":
        taps = taps * np.hanning(n_cols)[None, :]
    elif window != "none":
        raise ValueError(f"unknown window {window!r}")
    total = n_cols + int(zero_pad)
    spectrum = np.fft.fftshift(np.fft.fft(taps, n=total, axis=1), axes=1)
    magnitude = np.abs(spectrum)
    delay_axis = np.arange(taps.shape[0]) / fs
    step = 1.0 / (cir.column_period_s * total)
    doppler_axis = (np.arange(total) - total // 2) * step
    return RadarMap.from_linear(magnitude, delay_axis, doppler_axis, method="pilot")
