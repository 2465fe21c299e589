"""OTFS-based integrated sensing and communication baseband simulator.

Builds OTFS frames (zero-padded or random-padded pilots), passes them
through a deterministic multi-target delay-Doppler channel, and detects
the targets with two radar back-ends: a cross-ambiguity correlator and a
pilot-based CIR estimator.
"""

from .caf import compute_caf, compute_caf_direct
from .channel import ChannelConfig, Target, add_awgn, apply_channel, apply_channel_reference, doppler_of
from .estimators import CafRadar, MultipathChannel, PilotRadar
from .grid import (
    C_LIGHT,
    GridConfig,
    bin_to_physical,
    deserialize_stream,
    doppler_resolution,
    inverse_zak,
    max_doppler,
    serialize_frames,
    zak,
)
from .maps import RadarMap
from .metrics import Peak, PeakReport, find_peaks, noise_floor_rms_db, peak_report
from .modem import (
    Frame,
    FrameLayout,
    RpPilot,
    TxRecord,
    ZpPilot,
    build_capture,
    build_rp_frame,
    build_zp_frame,
    gen_rp_pilot,
    map_bits_to_qam,
    random_qam_symbols,
)
from .pilot import CirMatrix, cir_to_dd_map, estimate_cir_rp, estimate_cir_zp
from .runner import run_dump_frame, run_maps, run_point, run_simulate, run_sweep, snr_sweep
from .scenario import Scenario, parse_scenario, parse_scenario_text, scenario_to_lines

__version__ = "0.1.0"

__all__ = [
    "C_LIGHT",
    "CafRadar",
    "ChannelConfig",
    "CirMatrix",
    "Frame",
    "FrameLayout",
    "GridConfig",
    "MultipathChannel",
    "Peak",
    "PeakReport",
    "PilotRadar",
    "RadarMap",
    "RpPilot",
    "Scenario",
    "Target",
    "TxRecord",
    "ZpPilot",
    "add_awgn",
    "apply_channel",
    "apply_channel_reference",
    "bin_to_physical",
    "build_capture",
    "build_rp_frame",
    "build_zp_frame",
    "cir_to_dd_map",
    "compute_caf",
    "compute_caf_direct",
    "deserialize_stream",
    "doppler_of",
    "doppler_resolution",
    "estimate_cir_rp",
    "estimate_cir_zp",
    "find_peaks",
    "gen_rp_pilot",
    "inverse_zak",
    "map_bits_to_qam",
    "max_doppler",
    "noise_floor_rms_db",
    "parse_scenario",
    "parse_scenario_text",
    "peak_report",
    "random_qam_symbols",
    "run_dump_frame",
    "run_maps",
    "run_point",
    "run_simulate",
    "run_sweep",
    "scenario_to_lines",
    "serialize_frames",
    "snr_sweep",
    "zak",
]
