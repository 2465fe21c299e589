"""Frame construction for both pilot layouts.

Two pilot placements are supported:

* zero-padded (ZP): a block of DD delay rows is zeroed and a single pulse
  carrier is placed at the zone's center row, Doppler bin 0;
* random-padded (RP): short OFDM symbols with seeded random QAM content
  are written directly into the fast-time rows of every slow-time column,
  with a cyclic prefix as long as the symbol itself.

Data symbols live in the remaining DD rows and reach the time domain
through the row-wise inverse DFT, so the RP overwrite destroys no data
energy (row locality).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from .grid import GridConfig, inverse_zak, serialize_frames
from .validation import as_stream, check_power_of_two

_INV_SQRT2 = 1.0 / np.sqrt(2.0)

# Gray-coded 4-QAM: first bit selects the real sign, second bit the
# imaginary sign; adjacent points differ in one bit.
QAM_GRAY = {
    (0, 0): complex(_INV_SQRT2, _INV_SQRT2),
    (0, 1): complex(_INV_SQRT2, -_INV_SQRT2),
    (1, 1): complex(-_INV_SQRT2, -_INV_SQRT2),
    (1, 0): complex(-_INV_SQRT2, _INV_SQRT2),
}


def map_bits_to_qam(bits) -> np.ndarray:
    """Map a bit sequence to unit-energy Gray-coded 4-QAM symbols (2 bits each)."""
    bits = np.asarray(bits, dtype=np.int64).ravel()
    if bits.size % 2 != 0:
        raise ValueError(f"bit count must be even, got {bits.size}")
    if bits.size and not np.isin(bits, (0, 1)).all():
        raise ValueError("bits must be 0 or 1")
    re = 1.0 - 2.0 * bits[0::2]
    im = 1.0 - 2.0 * bits[1::2]
    return (re + 1j * im) * _INV_SQRT2


def random_qam_symbols(count: int, seed) -> np.ndarray:
    """Draw ``count`` uniform 4-QAM symbols from a deterministic generator."""
    rng = np.random.default_rng(seed)
    bits = rng.integers(0, 2, size=2 * int(count))
    return map_bits_to_qam(bits)


@dataclass(frozen=True)
class RpPilot:
    """Random-padded pilot: OFDM symbol of ``sym_len`` samples, CP of equal length."""

    sym_len: int
    seed: int = 0

    def __post_init__(self):
        check_power_of_two(self.sym_len, "sym_len")

    @property
    def cp_len(self) -> int:
        return self.sym_len

    @property
    def pilot_rows(self) -> int:
        return 2 * self.sym_len

    def spectrum(self) -> np.ndarray:
        """The seeded 4-QAM values occupying the pilot symbol's carriers."""
        return random_qam_symbols(self.sym_len, self.seed)


@dataclass(frozen=True)
class ZpPilot:
    """Zero-padded pilot: a zeroed DD zone with one pulse at (pulse_row, Doppler 0)."""

    zone_rows: int
    pulse_row: int | None = None
    pulse_amplitude: complex = 1.0 + 0.0j

    def __post_init__(self):
        if self.zone_rows < 1:
            raise ValueError(f"zone_rows must be >= 1, got {self.zone_rows}")
        if self.pulse_row is None:
            object.__setattr__(self, "pulse_row", self.zone_rows // 2)
        if not 0 <= self.pulse_row < self.zone_rows:
            raise ValueError(f"pulse_row {self.pulse_row} outside the pilot zone [0, {self.zone_rows})")
        if self.pulse_amplitude == 0:
            raise ValueError("pulse_amplitude must be nonzero")

    @property
    def pilot_rows(self) -> int:
        return self.zone_rows


PilotScheme = Union[RpPilot, ZpPilot]


@dataclass(frozen=True)
class FrameLayout:
    """Row partition of a frame: pilot rows [0, L), data rows [L, M)."""

    pilot_rows: range
    data_rows: range

    @classmethod
    def for_scheme(cls, cfg: GridConfig, scheme: PilotScheme) -> "FrameLayout":
        pilot = scheme.pilot_rows
        if pilot >= cfg.m:
            raise ValueError(f"pilot zone of {pilot} rows leaves no data rows in a {cfg.m}-row grid")
        return cls(pilot_rows=range(0, pilot), data_rows=range(pilot, cfg.m))


@dataclass(frozen=True)
class Frame:
    """One OTFS frame: paired DD and TT matrices plus the row layout."""

    dd: np.ndarray
    tt: np.ndarray
    layout: FrameLayout
    cfg: GridConfig


def gen_rp_pilot(sym_len: int, pilot_seed) -> np.ndarray:
    """Time-domain RP pilot for one slow-time column: CP then symbol, 2*sym_len samples.

    The symbol is the 1/P-normalized inverse DFT of ``sym_len`` seeded
    4-QAM values; the cyclic prefix is a full copy of the symbol, so the
    first and last ``sym_len`` samples are identical. The same seed always
    produces the same pilot.
    """
    check_power_of_two(sym_len, "sym_len")
    spectrum = random_qam_symbols(sym_len, pilot_seed)
    symbol = np.fft.ifft(spectrum)
    return np.concatenate([symbol, symbol])


def _fill_data_zone(dd: np.ndarray, data: np.ndarray, first_row: int) -> None:
    m, n = dd.shape
    rows = m - first_row
    # column-major: symbols run down each column's data rows, then the next column
    dd[first_row:, :] = data.reshape((n, rows)).T


def build_rp_frame(data, cfg: GridConfig, scheme: RpPilot) -> Frame:
    """Assemble one RP-OTFS frame from a stream of data symbols.

    DD rows [2P, M) take the data column-major; TT is the inverse Zak of
    that grid, after which rows [0, 2P) of every column are overwritten
    with the pilot (CP first).
    """
    if not isinstance(scheme, RpPilot):
        raise TypeError("build_rp_frame needs an RpPilot scheme")
    layout = FrameLayout.for_scheme(cfg, scheme)
    data = as_stream(data, "data")
    expected = len(layout.data_rows) * cfg.n
    if data.size != expected:
        raise ValueError(f"data length {data.size} != (m - 2P)*n = {expected}")
    dd = np.zeros((cfg.m, cfg.n), dtype=np.complex128)
    _fill_data_zone(dd, data, scheme.pilot_rows)
    tt = inverse_zak(dd, cfg)
    tt[: scheme.pilot_rows, :] = gen_rp_pilot(scheme.sym_len, scheme.seed)[:, None]
    return Frame(dd=dd, tt=tt, layout=layout, cfg=cfg)


def build_zp_frame(data, cfg: GridConfig, scheme: ZpPilot) -> Frame:
    """Assemble one ZP-OTFS frame: zeroed pilot zone with a single DD pulse."""
    if not isinstance(scheme, ZpPilot):
        raise TypeError("build_zp_frame needs a ZpPilot scheme")
    layout = FrameLayout.for_scheme(cfg, scheme)
    data = as_stream(data, "data")
    expected = len(layout.data_rows) * cfg.n
    if data.size != expected:
        raise ValueError(f"data length {data.size} != (m - zone_rows)*n = {expected}")
    dd = np.zeros((cfg.m, cfg.n), dtype=np.complex128)
    _fill_data_zone(dd, data, scheme.zone_rows)
    dd[scheme.pulse_row, 0] = scheme.pulse_amplitude
    tt = inverse_zak(dd, cfg)
    return Frame(dd=dd, tt=tt, layout=layout, cfg=cfg)


def build_frame(data, cfg: GridConfig, scheme: PilotScheme) -> Frame:
    if isinstance(scheme, RpPilot):
        return build_rp_frame(data, cfg, scheme)
    return build_zp_frame(data, cfg, scheme)


def frame_data_seed(data_seed: int, frame_index: int) -> list[int]:
    """Per-frame seed derivation: stable, collision-free across frames."""
    return [int(data_seed), int(frame_index)]


@dataclass(frozen=True)
class TxRecord:
    """Everything the receiver knows about a transmitted capture.

    ``stream`` is the serialized baseband signal (the re-modulated
    reference for the correlation radar); the scheme and seeds allow the
    pilot and per-frame data to be regenerated bit-exactly.
    """

    cfg: GridConfig
    scheme: PilotScheme
    n_frames: int
    data_seed: int
    stream: np.ndarray

    @property
    def duration_s(self) -> float:
        return self.stream.size / self.cfg.fs


def build_capture(cfg: GridConfig, scheme: PilotScheme, n_frames: int, data_seed: int) -> TxRecord:
    """Serialize ``n_frames`` frames with per-frame random data and one shared pilot."""
    if n_frames < 1:
        raise ValueError(f"n_frames must be >= 1, got {n_frames}")
    layout = FrameLayout.for_scheme(cfg, scheme)
    per_frame = len(layout.data_rows) * cfg.n
    frames = []
    for k in range(n_frames):
        data = random_qam_symbols(per_frame, frame_data_seed(data_seed, k))
        frames.append(build_frame(data, cfg, scheme).tt)
    stream = serialize_frames(frames, cfg)
    return TxRecord(cfg=cfg, scheme=scheme, n_frames=int(n_frames), data_seed=int(data_seed), stream=stream)
