"""Delay-Doppler grid geometry and the transforms every other module shares.

Conventions used throughout the package:

* A delay-Doppler (DD) matrix is a complex ndarray of shape (M, N):
  rows index delay, columns index Doppler.
* A fast-time/slow-time (TT) matrix has the same shape: rows index fast
  time (consecutive samples within a column), columns index slow time.
* DFT normalization: forward transforms are unnormalized, inverse
  transforms carry the 1/N factor (numpy's default).
* Serialization is slow-time-major: column after column, each column
  contributing its M fast-time samples as one contiguous burst.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .validation import as_complex_matrix, as_stream, check_index, check_positive, check_power_of_two

C_LIGHT = 299_792_458.0


@dataclass(frozen=True)
class GridConfig:
    """Grid geometry plus the two radio constants the math needs.

    m: delay (fast-time) bins per column, a power of two
    n: Doppler (slow-time) bins per frame, a power of two
    fs: sampling rate in Hz
    fc: carrier frequency in Hz
    """

    m: int
    n: int
    fs: float
    fc: float

    def __post_init__(self):
        check_power_of_two(self.m, "m")
        check_power_of_two(self.n, "n")
        if self.m < 2 or self.n < 2:
            raise ValueError(f"grid needs m >= 2 and n >= 2, got m={self.m}, n={self.n}")
        check_positive(self.fs, "fs")
        check_positive(self.fc, "fc")

    @property
    def frame_samples(self) -> int:
        return self.m * self.n

    @property
    def frame_duration_s(self) -> float:
        return self.m * self.n / self.fs

    @property
    def max_doppler_hz(self) -> float:
        return max_doppler(self.fs, self.m)

    def doppler_resolution_hz(self, frames: int = 1) -> float:
        return doppler_resolution(self.fs, self.m, self.n, frames)


def _check_grid_shape(arr: np.ndarray, cfg: GridConfig | None, name: str) -> np.ndarray:
    shape = (cfg.m, cfg.n) if cfg is not None else None
    return as_complex_matrix(arr, name, shape)


def inverse_zak(dd, cfg: GridConfig | None = None) -> np.ndarray:
    """DD -> TT: length-N inverse DFT along each delay row (1/N normalized).

    Rows never mix, so energy placed in DD row l lands only in TT row l.
    """
    dd = _check_grid_shape(dd, cfg, "dd")
    return np.fft.ifft(dd, axis=1)


def zak(tt, cfg: GridConfig | None = None) -> np.ndarray:
    """TT -> DD: unnormalized forward DFT along each fast-time row.

    Exact inverse of :func:`inverse_zak`.
    """
    tt = _check_grid_shape(tt, cfg, "tt")
    return np.fft.fft(tt, axis=1)


def max_doppler(fs: float, m: int) -> float:
    """Largest unambiguous Doppler offset, fs / (2 m), in Hz.

    Takes raw parameters so design studies with arbitrary m (not only
    powers of two) can be evaluated without building a GridConfig.
    """
    check_positive(fs, "fs")
    if int(m) < 2:
        raise ValueError(f"m must be >= 2, got {m}")
    return fs / (2.0 * int(m))


def doppler_resolution(fs: float, m: int, n: int, frames: int = 1) -> float:
    """Doppler bin width fs / (m n frames): reciprocal of the coherent span."""
    check_positive(fs, "fs")
    if int(m) < 2 or int(n) < 2:
        raise ValueError(f"m and n must be >= 2, got m={m}, n={n}")
    if int(frames) < 1:
        raise ValueError(f"frames must be >= 1, got {frames}")
    return fs / (int(m) * int(n) * int(frames))


def serialize_frames(tt_frames: Sequence[np.ndarray], cfg: GridConfig | None = None) -> np.ndarray:
    """Concatenate TT frames into one sample stream, slow-time-major.

    Within a frame, column n is emitted before column n+1 and contributes
    its M fast-time samples consecutively.
    """
    if len(tt_frames) == 0:
        raise ValueError("need at least one frame to serialize")
    parts = []
    for i, tt in enumerate(tt_frames):
        tt = _check_grid_shape(tt, cfg, f"tt_frames[{i}]")
        if tt.shape != np.shape(tt_frames[0]):
            raise ValueError("all frames must share one grid shape")
        parts.append(tt.reshape(-1, order="F"))
    return np.concatenate(parts)


def deserialize_stream(stream, cfg: GridConfig) -> list[np.ndarray]:
    """Inverse of :func:`serialize_frames`; stream length must be a whole number of frames."""
    stream = as_stream(stream, "stream")
    per_frame = cfg.frame_samples
    if stream.size % per_frame != 0:
        raise ValueError(f"stream length {stream.size} is not a multiple of m*n={per_frame}")
    k = stream.size // per_frame
    return [stream[i * per_frame:(i + 1) * per_frame].reshape((cfg.m, cfg.n), order="F") for i in range(k)]


def bin_to_physical(delay_bin: int, doppler_bin: int, cfg: GridConfig, frames: int = 1) -> tuple[float, float]:
    """Map (delay bin, signed Doppler bin) to (range in m, radial velocity in m/s).

    Uses the monostatic two-way convention: range = bin * c / (2 fs) and
    velocity = doppler * c / (2 fc). Flip the factor of two here if a
    one-way geometry is ever needed.
    """
    check_index(delay_bin, cfg.m, "delay_bin")
    half_span = cfg.n * int(frames) // 2
    if not -half_span <= int(doppler_bin) <= half_span:
        raise ValueError(f"doppler_bin {doppler_bin} outside [-{half_span}, {half_span}]")
    range_m = delay_bin * C_LIGHT / (2.0 * cfg.fs)
    doppler_hz = doppler_bin * doppler_resolution(cfg.fs, cfg.m, cfg.n, frames)
    velocity_mps = doppler_hz * C_LIGHT / (2.0 * cfg.fc)
    return range_m, velocity_mps
