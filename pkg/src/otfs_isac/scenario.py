"""Scenario files: flat ``section.key = value`` text, one value per line.

The same format serves as the run manifest: a manifest written by the
runner is itself a complete scenario file, which is what makes re-runs
bit-reproducible. Lines starting with ``#`` are comments.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from pathlib import Path

from .channel import Target
from .grid import GridConfig
from .modem import PilotScheme, RpPilot, ZpPilot

METHODS = ("caf", "pilot", "both")


@dataclass(frozen=True)
class Scenario:
    grid: GridConfig
    pilot: PilotScheme
    targets: tuple[Target, ...] = field(default_factory=tuple)
    snr_db: float = math.inf
    integration_time_s: float | None = None
    data_seed: int = 1
    noise_seed: int = 2
    method: str = "both"
    window: str = "none"
    n_delay: int | None = None
    n_doppler: int | None = None
    zero_pad: int = 0
    guard_delay: int = 3
    guard_doppler: int = 5
    max_peaks: int = 10
    min_separation_db: float = 60.0
    output_dir: str = "out"

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"method must be one of {METHODS}, got {self.method!r}")
        if self.n_frames < 1:
            raise ValueError("integration time shorter than one frame")

    @property
    def n_frames(self) -> int:
        if self.integration_time_s is None:
            return 1
        return round(self.integration_time_s * self.grid.fs / self.grid.frame_samples)

    def with_seed(self, seed: int) -> "Scenario":
        """Derive every seed from one master seed (CLI --seed override)."""
        pilot = self.pilot
        if isinstance(pilot, RpPilot):
            pilot = replace(pilot, seed=seed + 1)
        return replace(self, data_seed=seed, noise_seed=seed + 2, pilot=pilot)


def _parse_value(text: str):
    text = text.strip()
    lowered = text.lower()
    if lowered in ("inf", "+inf", "infinity"):
        return math.inf
    for cast in (int, float, complex):
        try:
            return cast(text)
        except ValueError:
            continue
    return text


def parse_scenario_text(text: str, source: str = "<string>") -> Scenario:
    values: dict[str, object] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"{source}:{lineno}: expected 'key = value', got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        if not key:
            raise ValueError(f"{source}:{lineno}: empty key")
        values[key] = _parse_value(value)
    return scenario_from_dict(values, source)


def parse_scenario(path) -> Scenario:
    path = Path(path)
    return parse_scenario_text(path.read_text(), source=str(path))


def _require(values: dict, key: str, source: str):
    if key not in values:
        raise ValueError(f"{source}: missing required key {key!r}")
    return values[key]


def scenario_from_dict(values: dict, source: str = "<dict>") -> Scenario:
    grid = GridConfig(
        m=int(_require(values, "grid.m", source)),
        n=int(_require(values, "grid.n", source)),
        fs=float(_require(values, "grid.fs_hz", source)),
        fc=float(_require(values, "grid.fc_hz", source)),
    )
    variant = str(_require(values, "pilot.variant", source)).lower()
    if variant == "rp":
        pilot: PilotScheme = RpPilot(
            sym_len=int(_require(values, "pilot.sym_len", source)),
            seed=int(values.get("pilot.seed", 0)),
        )
    elif variant == "zp":
        pulse_row = values.get("pilot.pulse_row")
        pilot = ZpPilot(
            zone_rows=int(_require(values, "pilot.zone_rows", source)),
            pulse_row=None if pulse_row is None else int(pulse_row),
            pulse_amplitude=complex(values.get("pilot.pulse_amplitude", 1)),
        )
    else:
        raise ValueError(f"{source}: pilot.variant must be 'rp' or 'zp', got {variant!r}")

    targets = []
    i = 1
    while f"target.{i}.delay_samples" in values:
        targets.append(
            Target(
                delay_samples=int(values[f"target.{i}.delay_samples"]),
                velocity_mps=float(values.get(f"target.{i}.velocity_mps", 0.0)),
                amplitude=complex(values.get(f"target.{i}.amplitude", 1)),
            )
        )
        i += 1

    ti = values.get("capture.integration_time_s")
    scenario = Scenario(
        grid=grid,
        pilot=pilot,
        targets=tuple(targets),
        snr_db=float(values.get("channel.snr_db", math.inf)),
        integration_time_s=None if ti is None else float(ti),
        data_seed=int(values.get("seeds.data", 1)),
        noise_seed=int(values.get("seeds.noise", 2)),
        method=str(values.get("radar.method", "both")),
        window=str(values.get("radar.window", "none")),
        n_delay=None if "radar.n_delay" not in values else int(values["radar.n_delay"]),
        n_doppler=None if "radar.n_doppler" not in values else int(values["radar.n_doppler"]),
        zero_pad=int(values.get("radar.zero_pad", 0)),
        guard_delay=int(values.get("metrics.guard_delay", 3)),
        guard_doppler=int(values.get("metrics.guard_doppler", 5)),
        max_peaks=int(values.get("metrics.max_peaks", 10)),
        min_separation_db=float(values.get("metrics.min_separation_db", 60.0)),
        output_dir=str(values.get("output.dir", "out")),
    )
    return scenario


def scenario_to_lines(s: Scenario) -> list[str]:
    """Fully resolved key list; parsing it back yields an equivalent Scenario."""
    lines = [
        f"grid.m = {s.grid.m}",
        f"grid.n = {s.grid.n}",
        f"grid.fs_hz = {s.grid.fs:.17g}",
        f"grid.fc_hz = {s.grid.fc:.17g}",
    ]
    if isinstance(s.pilot, RpPilot):
        lines += [
            "pilot.variant = rp",
            f"pilot.sym_len = {s.pilot.sym_len}",
            f"pilot.seed = {s.pilot.seed}",
        ]
    else:
        lines += [
            "pilot.variant = zp",
            f"pilot.zone_rows = {s.pilot.zone_rows}",
            f"pilot.pulse_row = {s.pilot.pulse_row}",
            f"pilot.pulse_amplitude = {s.pilot.pulse_amplitude:.17g}",
        ]
    for i, t in enumerate(s.targets, start=1):
        lines += [
            f"target.{i}.delay_samples = {t.delay_samples}",
            f"target.{i}.velocity_mps = {t.velocity_mps:.17g}",
            f"target.{i}.amplitude = {t.amplitude:.17g}",
        ]
    lines += [
        f"channel.snr_db = {'inf' if math.isinf(s.snr_db) else format(s.snr_db, '.17g')}",
    ]
    if s.integration_time_s is not None:
        lines.append(f"capture.integration_time_s = {s.integration_time_s:.17g}")
    lines += [
        f"seeds.data = {s.data_seed}",
        f"seeds.noise = {s.noise_seed}",
        f"radar.method = {s.method}",
        f"radar.window = {s.window}",
    ]
    if s.n_delay is not None:
        lines.append(f"radar.n_delay = {s.n_delay}")
    if s.n_doppler is not None:
        lines.append(f"radar.n_doppler = {s.n_doppler}")
    lines += [
        f"radar.zero_pad = {s.zero_pad}",
        f"metrics.guard_delay = {s.guard_delay}",
        f"metrics.guard_doppler = {s.guard_doppler}",
        f"metrics.max_peaks = {s.max_peaks}",
        f"metrics.min_separation_db = {s.min_separation_db:.17g}",
        f"output.dir = {s.output_dir}",
    ]
    return lines
