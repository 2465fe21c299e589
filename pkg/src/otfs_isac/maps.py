"""RadarMap: the common output of both radar back-ends."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# Cells that are exactly zero in linear magnitude are clamped here so the
# stored map stays finite; metrics treat clamped cells as true zeros.
DB_FLOOR = -400.0


@dataclass(frozen=True)
class RadarMap:
    """2-D magnitude map over (delay bin, Doppler bin), peak-normalized to 0 dB.

    magnitude_db: (n_delay, n_doppler) float matrix, global max exactly 0.0
    delay_axis_s: per-row delay in seconds
    doppler_axis_hz: per-column Doppler in Hz (signed, zero-centered)
    method: tag of the producing back-end ("caf" or "pilot")
    """

    magnitude_db: np.ndarray
    delay_axis_s: np.ndarray
    doppler_axis_hz: np.ndarray
    method: str

    def __post_init__(self):
        if self.magnitude_db.ndim != 2:
            raise ValueError("magnitude_db must be 2-D")
        if self.magnitude_db.shape != (self.delay_axis_s.size, self.doppler_axis_hz.size):
            raise ValueError("axis lengths do not match the map shape")
        if not np.isfinite(self.magnitude_db).all():
            raise ValueError("magnitude_db must be finite everywhere")
        if abs(float(self.magnitude_db.max())) > 1e-12:
            raise ValueError("map must be normalized so its peak is exactly 0 dB")

    @classmethod
    def from_linear(cls, magnitude, delay_axis_s, doppler_axis_hz, method: str) -> "RadarMap":
        mag = np.asarray(magnitude, dtype=np.float64)
        peak = float(mag.max()) if mag.size else 0.0
        if not np.isfinite(peak) or peak <= 0.0:
            raise ValueError("map has no positive peak to normalize against")
        with np.errstate(divide="ignore"):
            db = 20.0 * np.log10(mag / peak)
        db = np.maximum(db, DB_FLOOR)
        flat_peak = np.unravel_index(int(np.argmax(mag)), mag.shape)
        db[flat_peak] = 0.0  # kill roundoff so the invariant is exact
        return cls(
            magnitude_db=db,
            delay_axis_s=np.asarray(delay_axis_s, dtype=np.float64),
            doppler_axis_hz=np.asarray(doppler_axis_hz, dtype=np.float64),
            method=method,
        )

    def linear(self) -> np.ndarray:
        """Linear magnitudes relative to the peak; clamped cells come back as 0."""
        lin = 10.0 ** (self.magnitude_db / 20.0)
        lin[self.magnitude_db <= DB_FLOOR] = 0.0
        return lin

    @property
    def shape(self) -> tuple[int, int]:
        return self.magnitude_db.shape

    def peak_index(self) -> tuple[int, int]:
        idx = np.unravel_index(int(np.argmax(self.magnitude_db)), self.shape)
        return int(idx[0]), int(idx[1])
