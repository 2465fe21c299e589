import numpy as np
import pytest

from otfs_isac import (
    ChannelConfig,
    GridConfig,
    RpPilot,
    Target,
    apply_channel,
    build_capture,
    compute_caf,
    compute_caf_direct,
)


def random_stream(n, seed=0):
    rng = np.random.default_rng(seed)
    return rng.standard_normal(n) + 1j * rng.standard_normal(n)


class TestOracleEquivalence:
    @pytest.mark.parametrize("window", ["none", "hann"])
    @pytest.mark.parametrize("length", [512, 2048])
    def test_fast_path_matches_double_sum(self, window, length):
        ref = random_stream(length, seed=1)
        srv = random_stream(length, seed=2)
        fast = compute_caf(ref, srv, n_delay=8, n_doppler=16, fs=1e6, window=window)
        direct = compute_caf_direct(ref, srv, n_delay=8, n_doppler=16, fs=1e6, window=window)
        fast_lin = fast.linear() * direct.max()  # undo the 0 dB normalization
        rel = np.abs(fast_lin - direct) / direct.max()
        assert rel.max() < 1e-6

    def test_fast_path_matches_double_sum_8192(self):
        ref = random_stream(8192, seed=3)
        srv = random_stream(8192, seed=4)
        fast = compute_caf(ref, srv, n_delay=4, n_doppler=8, fs=1e6)
        direct = compute_caf_direct(ref, srv, n_delay=4, n_doppler=8, fs=1e6)
        rel = np.abs(fast.linear() * direct.max() - direct) / direct.max()
        assert rel.max() < 1e-6


class TestPeakBehaviour:
    def test_autocorrelation_peak_at_origin(self):
        ref = random_stream(4096, seed=5)
        rmap = compute_caf(ref, ref, n_delay=16, n_doppler=32, fs=20e6)
        assert rmap.peak_index() == (0, 16)  # Doppler bin 0 is the centered column
        assert rmap.magnitude_db[0, 16] == 0.0
        assert rmap.doppler_axis_hz[16] == 0.0

    def test_delayed_modulated_copy(self):
        fs = 20e6
        total = 8192
        ref = random_stream(total, seed=6)
        ch = ChannelConfig(targets=(Target(7, 139.0, 1.0),), fc=4e9, fs=fs)
        srv = apply_channel(ref, ch)
        n_doppler = 64
        rmap = compute_caf(ref, srv, n_delay=16, n_doppler=n_doppler, fs=fs)
        direct = compute_caf_direct(ref, srv, n_delay=16, n_doppler=n_doppler, fs=fs)
        # fast path and oracle must agree on the winning bin
        assert rmap.peak_index() == tuple(np.unravel_index(np.argmax(direct), direct.shape))
        d, k = rmap.peak_index()
        assert d == 7
        f_target = 2 * 139.0 * 4e9 / 299792458.0
        step = fs / total
        assert abs(rmap.doppler_axis_hz[k] - f_target) <= step / 2 + 1e-9

    def test_global_phase_invariance(self):
        ref = random_stream(1024, seed=7)
        srv = random_stream(1024, seed=8)
        a = compute_caf(ref, srv, 8, 16, fs=1e6)
        b = compute_caf(ref, srv * np.exp(1j * 1.234), 8, 16, fs=1e6)
        assert np.abs(a.magnitude_db - b.magnitude_db).max() < 1e-9

    def test_rp_capture_has_cp_ghost_peaks(self):
        cfg = GridConfig(m=32, n=64, fs=20e6, fc=4e9)
        scheme = RpPilot(sym_len=4, seed=3)
        record = build_capture(cfg, scheme, n_frames=4, data_seed=1)
        d0 = 2
        srv = apply_channel(record.stream, ChannelConfig(targets=(Target(d0, 80.0, 1.0),), fc=4e9, fs=20e6))
        rmap = compute_caf(record.stream, srv, n_delay=cfg.m, n_doppler=cfg.n * 4, fs=20e6)
        d_peak, k_peak = rmap.peak_index()
        assert d_peak == d0
        p = scheme.sym_len
        ghost_hi = rmap.magnitude_db[(d0 + p) % cfg.m, k_peak]
        ghost_lo = rmap.magnitude_db[(d0 - p) % cfg.m, k_peak]
        floor = np.median(rmap.magnitude_db)
        for ghost in (ghost_hi, ghost_lo):
            assert ghost < 0.0  # strictly below the main peak
            assert ghost > floor + 6.0


class TestValidation:
    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            compute_caf(random_stream(64), random_stream(65), 4, 8, fs=1e6)

    def test_excessive_doppler_bins(self):
        with pytest.raises(ValueError):
            compute_caf(random_stream(64), random_stream(64), 4, 128, fs=1e6)

    def test_odd_doppler_count(self):
        with pytest.raises(ValueError):
            compute_caf(random_stream(64), random_stream(64), 4, 7, fs=1e6)

    def test_unknown_window(self):
        with pytest.raises(ValueError):
            compute_caf(random_stream(64), random_stream(64), 4, 8, fs=1e6, window="kaiser")

    def test_map_axes(self):
        rmap = compute_caf(random_stream(256, 1), random_stream(256, 2), 4, 8, fs=2e6)
        assert rmap.delay_axis_s[1] == pytest.approx(1 / 2e6)
        assert rmap.doppler_axis_hz[0] == pytest.approx(-4 * 2e6 / 256)
        assert rmap.method == "caf"
