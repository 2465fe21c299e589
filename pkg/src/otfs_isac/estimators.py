"""Estimator-style wrappers so the processing chain composes with the
scikit-learn ecosystem (get_params/set_params, clone, Pipeline).

The functional core stays in :mod:`caf`, :mod:`pilot`, and
:mod:`channel`; these classes only hold configuration and fitted state.
A radar is fitted on the transmit record (the receiver-side knowledge)
and then transforms received sample streams into RadarMaps; ``predict``
goes one step further and returns the PeakReport.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.exceptions import NotFittedError

from .caf import compute_caf
from .channel import ChannelConfig, Target, apply_channel
from .maps import RadarMap
from .metrics import PeakReport, peak_report
from .modem import TxRecord
from .pilot import cir_to_dd_map, estimate_cir_rp
from .validation import as_stream


class MultipathChannel(BaseEstimator, TransformerMixin):
    """Stateless transformer applying the multi-target channel plus AWGN."""

    def __init__(self, targets=(), snr_db=np.inf, noise_seed=0, fc=1.0, fs=1.0):
        self.targets = targets
        self.snr_db = snr_db
        self.noise_seed = noise_seed
        self.fc = fc
        self.fs = fs

    def _config(self) -> ChannelConfig:
        targets = tuple(t if isinstance(t, Target) else Target(*t) for t in self.targets)
        return ChannelConfig(targets=targets, snr_db=self.snr_db, noise_seed=self.noise_seed, fc=self.fc, fs=self.fs)

    def fit(self, X=None, y=None):
        self._config()  # validates the parameters
        return self

    def transform(self, X) -> np.ndarray:
        return apply_channel(as_stream(X, "X"), self._config())


class _RadarBase(BaseEstimator):
    guard_delay: int
    guard_doppler: int
    max_peaks: int

    def _record(self) -> TxRecord:
        record = getattr(self, "record_", None)
        if record is None:
            raise NotFittedError(f"{type(self).__name__} must be fitted on a TxRecord first")
        return record

    def fit(self, record: TxRecord, y=None):
        if not isinstance(record, TxRecord):
            raise TypeError("fit expects the TxRecord of the transmitted capture")
        self.record_ = record
        return self

    def predict(self, X) -> PeakReport:
        return peak_report(
            self.transform(X),
            guard_delay=self.guard_delay,
            guard_doppler=self.guard_doppler,
            max_peaks=self.max_peaks,
        )


class CafRadar(_RadarBase, TransformerMixin):
    """Correlation-based detector: CAF of the received stream against the
    re-modulated reference.

    n_delay/n_doppler default to the frame's delay extent and the full
    capture's Doppler bin count.
    """

    def __init__(self, n_delay=None, n_doppler=None, window="none",
                 guard_delay=3, guard_doppler=5, max_peaks=10):
        self.n_delay = n_delay
        self.n_doppler = n_doppler
        self.window = window
        self.guard_delay = guard_delay
        self.guard_doppler = guard_doppler
        self.max_peaks = max_peaks

    def transform(self, X) -> RadarMap:
        record = self._record()
        cfg = record.cfg
        n_delay = self.n_delay if self.n_delay is not None else cfg.m
        n_doppler = self.n_doppler if self.n_doppler is not None else cfg.n * record.n_frames
        return compute_caf(record.stream, as_stream(X, "X"), n_delay, n_doppler, cfg.fs, window=self.window)


class PilotRadar(_RadarBase, TransformerMixin):
    """Pilot-based detector: per-column CIR estimates Zak-transformed over
    slow time."""

    def __init__(self, zero_pad=0, window="none",
                 guard_delay=3, guard_doppler=5, max_peaks=10):
        self.zero_pad = zero_pad
        self.window = window
        self.guard_delay = guard_delay
        self.guard_doppler = guard_doppler
        self.max_peaks = max_peaks

    def transform(self, X) -> RadarMap:
        record = self._record()
        cir = estimate_cir_rp(as_stream(X, "X"), record)
        return cir_to_dd_map(cir, record.cfg.fs, zero_pad=self.zero_pad, window=self.window)
