"""Multi-target delay-Doppler channel with AWGN.

Each reflector delays the transmit stream by an integer number of
samples, scales it, and modulates it with the two-way Doppler shift of
its radial velocity (narrowband model: a complex exponential, no time
scaling). ``apply_channel_reference`` is a deliberately naive per-sample
implementation kept as the verification oracle for the vectorized path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .grid import C_LIGHT
from .validation import as_stream


@dataclass(frozen=True)
class Target:
    """One reflecting object."""

    delay_samples: int
    velocity_mps: float
    amplitude: complex = 1.0 + 0.0j

    def __post_init__(self):
        if self.delay_samples < 0:
            raise ValueError(f"delay_samples must be >= 0, got {self.delay_samples}")


@dataclass(frozen=True)
class ChannelConfig:
    targets: tuple[Target, ...] = field(default_factory=tuple)
    snr_db: float = math.inf
    noise_seed: int = 0
    fc: float = 1.0
    fs: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "targets", tuple(self.targets))


def doppler_of(target: Target, fc: float) -> float:
    """Two-way Doppler shift 2 v fc / c in Hz (signed)."""
    return 2.0 * target.velocity_mps * fc / C_LIGHT


def apply_channel(x, ch: ChannelConfig) -> np.ndarray:
    """Superpose all target echoes, then add AWGN at the requested SNR.

    y[t] = sum_i a_i x[t - d_i] exp(j 2 pi f_i t / fs), with x[t] = 0 for
    t < 0 and f_i the target's two-way Doppler. The phase argument is the
    absolute output sample index, so it evolves continuously across frame
    boundaries. SNR is defined against the mean power of the noiseless y.
    """
    x = as_stream(x, "x")
    t_total = x.size
    y = np.zeros(t_total, dtype=np.complex128)
    for tgt in ch.targets:
        d = tgt.delay_samples
        if d >= t_total:
            raise ValueError(f"target delay {d} >= stream length {t_total}")
        f = doppler_of(tgt, ch.fc)
        t = np.arange(d, t_total)
        y[d:] += tgt.amplitude * x[: t_total - d] * np.exp(2j * np.pi * f * t / ch.fs)
    if math.isinf(ch.snr_db):
        return y
    return add_awgn(y, ch.snr_db, ch.noise_seed)


def apply_channel_reference(x, ch: ChannelConfig) -> np.ndarray:
    """Per-sample double-loop form of the noiseless channel; oracle only."""
    x = as_stream(x, "x")
    y = np.zeros(x.size, dtype=np.complex128)
    for tgt in ch.targets:
        if tgt.delay_samples >= x.size:
            raise ValueError(f"target delay {tgt.delay_samples} >= stream length {x.size}")
        f = doppler_of(tgt, ch.fc)
        for t in range(x.size):
            if t - tgt.delay_samples >= 0:
                y[t] += tgt.amplitude * x[t - tgt.delay_samples] * np.exp(2j * np.pi * f * t / ch.fs)
    return y


def add_awgn(x, snr_db: float, seed) -> np.ndarray:
    """Add circularly-symmetric complex Gaussian noise at ``snr_db`` below x's mean power.

    ``snr_db = inf`` is the no-noise sentinel and returns the input
    unchanged. The realization is deterministic in ``seed``.
    """
    x = as_stream(x, "x")
    if math.isinf(snr_db):
        if snr_db < 0:
            raise ValueError("snr_db = -inf is not meaningful")
        return x.copy()
    signal_power = float(np.mean(np.abs(x) ** 2))
    if signal_power == 0.0:
        raise ValueError("input stream has zero power; SNR is undefined")
    noise_power = signal_power / 10.0 ** (snr_db / 10.0)
    rng = np.random.default_rng(seed)
    sigma = np.sqrt(noise_power / 2.0)
    noise = sigma * (rng.standard_normal(x.size) + 1j * rng.standard_normal(x.size))
    return x + noise
