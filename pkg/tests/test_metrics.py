import math

import numpy as np
import pytest

from otfs_isac import RadarMap, find_peaks, noise_floor_rms_db, peak_report
from otfs_isac.maps import DB_FLOOR


def map_from(linear, method="caf"):
    linear = np.asarray(linear, dtype=float)
    rows, cols = linear.shape
    return RadarMap.from_linear(linear, np.arange(rows) * 1e-6, (np.arange(cols) - cols // 2) * 10.0, method)


class TestRadarMap:
    def test_peak_is_exactly_zero_db(self):
        rmap = map_from(np.random.default_rng(0).random((8, 8)) + 0.1)
        assert rmap.magnitude_db.max() == 0.0

    def test_rejects_all_zero(self):
        with pytest.raises(ValueError):
            map_from(np.zeros((4, 4)))

    def test_clamped_cells_round_trip_to_zero(self):
        linear = np.zeros((4, 4))
        linear[1, 2] = 5.0
        rmap = map_from(linear)
        assert rmap.magnitude_db.min() == DB_FLOOR
        lin = rmap.linear()
        assert lin[1, 2] == 1.0
        assert lin.sum() == 1.0

    def test_axis_mismatch_rejected(self):
        with pytest.raises(ValueError):
            RadarMap(np.zeros((2, 2)), np.arange(3, dtype=float), np.arange(2, dtype=float), "caf")


class TestFindPeaks:
    def test_single_impulse(self):
        linear = np.full((16, 16), 1e-6)
        linear[5, 9] = 1.0
        peaks = find_peaks(map_from(linear), guard_delay=2, guard_doppler=2)
        assert peaks[0].delay_bin == 5 and peaks[0].doppler_bin == 9
        assert peaks[0].level_db == 0.0

    def test_tie_breaks_toward_lower_delay(self):
        linear = np.full((16, 16), 1e-6)
        linear[12, 3] = 1.0
        linear[4, 11] = 1.0
        peaks = find_peaks(map_from(linear), guard_delay=1, guard_doppler=1, max_peaks=2)
        assert (peaks[0].delay_bin, peaks[0].doppler_bin) == (4, 11)
        assert (peaks[1].delay_bin, peaks[1].doppler_bin) == (12, 3)

    def test_tie_breaks_toward_lower_doppler_within_row(self):
        linear = np.full((8, 8), 1e-6)
        linear[2, 1] = 1.0
        linear[2, 6] = 1.0
        peaks = find_peaks(map_from(linear), guard_delay=1, guard_doppler=1, max_peaks=2)
        assert (peaks[0].delay_bin, peaks[0].doppler_bin) == (2, 1)

    def test_guard_suppresses_shoulder(self):
        linear = np.full((16, 16), 1e-6)
        linear[5, 9] = 1.0
        linear[6, 9] = 0.9  # inside the guard of the first peak
        linear[12, 2] = 0.5
        peaks = find_peaks(map_from(linear), guard_delay=2, guard_doppler=2, max_peaks=3)
        coords = [(p.delay_bin, p.doppler_bin) for p in peaks]
        assert coords[:2] == [(5, 9), (12, 2)]
        assert (6, 9) not in coords

    def test_min_separation_cutoff(self):
        linear = np.full((8, 8), 1e-9)
        linear[1, 1] = 1.0
        linear[6, 6] = 1e-4  # -80 dB, below the 60 dB window
        peaks = find_peaks(map_from(linear), guard_delay=1, guard_doppler=1, min_separation_db=60.0)
        assert len(peaks) == 1

    def test_deterministic(self):
        rng = np.random.default_rng(5)
        rmap = map_from(rng.random((32, 32)) + 1e-3)
        a = find_peaks(rmap, max_peaks=5)
        b = find_peaks(rmap, max_peaks=5)
        assert a == b

    def test_oversized_guard_rejected(self):
        with pytest.raises(ValueError):
            find_peaks(map_from(np.ones((4, 4))), guard_delay=4, guard_doppler=1)


class TestNoiseFloor:
    def test_peak_plus_exact_zeros_underflows(self):
        linear = np.zeros((16, 16))
        linear[5, 9] = 1.0
        rmap = map_from(linear)
        peaks = find_peaks(rmap, guard_delay=2, guard_doppler=2, max_peaks=1)
        assert noise_floor_rms_db(rmap, peaks, 2, 2) == -math.inf

    def test_known_uniform_floor(self):
        linear = np.full((32, 32), 10 ** (-40 / 20.0))
        linear[3, 3] = 1.0
        rmap = map_from(linear)
        peaks = find_peaks(rmap, guard_delay=2, guard_doppler=2, max_peaks=1)
        assert noise_floor_rms_db(rmap, peaks, 2, 2) == pytest.approx(-40.0, abs=1e-9)

    def test_invariant_to_global_scaling(self):
        rng = np.random.default_rng(6)
        base = rng.random((16, 16)) + 1e-3
        a = map_from(base)
        b = map_from(base * 123.4)
        pa = find_peaks(a, max_peaks=2)
        pb = find_peaks(b, max_peaks=2)
        assert noise_floor_rms_db(a, pa) == pytest.approx(noise_floor_rms_db(b, pb), abs=1e-12)

    def test_everything_excluded_rejected(self):
        linear = np.ones((4, 4))
        linear[0, 0] = 2.0
        rmap = map_from(linear)
        peaks = find_peaks(rmap, guard_delay=3, guard_doppler=3, max_peaks=1)
        with pytest.raises(ValueError):
            noise_floor_rms_db(rmap, peaks, guard_delay=3, guard_doppler=3)


class TestPeakReport:
    def test_output_snr_identity(self):
        rng = np.random.default_rng(7)
        linear = rng.random((32, 32)) * 1e-2
        linear[8, 8] = 1.0
        report = peak_report(map_from(linear))
        assert report.output_snr_db == pytest.approx(-report.floor_rms_db)
        assert report.floor_rms_db < 0

    def test_peaks_sorted_descending(self):
        linear = np.full((32, 32), 1e-5)
        linear[2, 2] = 1.0
        linear[20, 20] = 0.5
        linear[10, 25] = 0.25
        report = peak_report(map_from(linear), guard_delay=2, guard_doppler=2, max_peaks=5)
        levels = [p.level_db for p in report.peaks]
        assert levels == sorted(levels, reverse=True)
        assert levels[0] == 0.0
