"""Map quantification: peak extraction, noise-floor RMS, output SNR."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .maps import RadarMap


@dataclass(frozen=True)
class Peak:
    delay_bin: int
    doppler_bin: int
    level_db: float


@dataclass(frozen=True)
class PeakReport:
    """Peaks sorted by falling level, plus the floor and the derived output SNR.

    output_snr_db is 0 dB (the normalized peak) minus floor_rms_db.
    """

    peaks: tuple[Peak, ...] = field(default_factory=tuple)
    floor_rms_db: float = -math.inf
    output_snr_db: float = math.inf


def _guard_slices(shape, peak: Peak, guard_delay: int, guard_doppler: int):
    r0 = max(0, peak.delay_bin - guard_delay)
    r1 = min(shape[0], peak.delay_bin + guard_delay + 1)
    c0 = max(0, peak.doppler_bin - guard_doppler)
    c1 = min(shape[1], peak.doppler_bin + guard_doppler + 1)
    return slice(r0, r1), slice(c0, c1)


def find_peaks(
    rmap: RadarMap,
    guard_delay: int = 3,
    guard_doppler: int = 5,
    max_peaks: int = 10,
    min_separation_db: float = 60.0,
) -> list[Peak]:
    """Greedy maxima extraction with guard exclusion.

    Repeatedly take the strongest remaining cell, record it, and mask its
    guard rectangle (+-guard_delay rows, +-guard_doppler columns). Stops
    after ``max_peaks`` or once candidates fall more than
    ``min_separation_db`` below the map peak. Ties break toward the lower
    delay bin, then the lower Doppler bin.
    """
    if rmap.magnitude_db.size == 0:
        raise ValueError("empty map")
    if guard_delay >= rmap.shape[0] or guard_doppler >= rmap.shape[1]:
        raise ValueError("guard rectangle does not fit inside the map")
    db = rmap.magnitude_db.copy()
    cutoff = -abs(min_separation_db)
    peaks: list[Peak] = []
    while len(peaks) < max_peaks:
        best = float(db.max())
        if not np.isfinite(best) or best < cutoff:
            break
        # ties: argmax scans rows first, so the first hit has the lowest
        # delay bin, then the lowest Doppler bin within it
        r, c = np.unravel_index(int(np.argmax(db)), db.shape)
        peak = Peak(delay_bin=int(r), doppler_bin=int(c), level_db=best)
        peaks.append(peak)
        rows, cols = _guard_slices(db.shape, peak, guard_delay, guard_doppler)
        db[rows, cols] = -np.inf
    return peaks


def noise_floor_rms_db(
    rmap: RadarMap,
    peaks: list[Peak],
    guard_delay: int = 3,
    guard_doppler: int = 5,
) -> float:
    """RMS of the linear magnitudes outside every peak's guard rectangle, in dB.

    Returns -inf when the remaining cells are all exactly zero (floor
    underflow on synthetic maps).
    """
    mask = np.ones(rmap.shape, dtype=bool)
    for peak in peaks:
        rows, cols = _guard_slices(rmap.shape, peak, guard_delay, guard_doppler)
        mask[rows, cols] = False
    if not mask.any():
        raise ValueError("peak guards exclude the whole map; nothing left to measure")
    residue = rmap.linear()[mask]
    rms = float(np.sqrt(np.mean(residue**2)))
    if rms == 0.0:
        return -math.inf
    return 20.0 * math.log10(rms)


def peak_report(
    rmap: RadarMap,
    guard_delay: int = 3,
    guard_doppler: int = 5,
    max_peaks: int = 10,
    min_separation_db: float = 60.0,
) -> PeakReport:
    """Bundle peak extraction and floor measurement for one map."""
    peaks = find_peaks(rmap, guard_delay, guard_doppler, max_peaks, min_separation_db)
    floor = noise_floor_rms_db(rmap, peaks, guard_delay, guard_doppler)
    return PeakReport(peaks=tuple(peaks), floor_rms_db=floor, output_snr_db=0.0 - floor)
