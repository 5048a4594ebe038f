"""Walled-channel scenes, bit encoding, pattern classification, and the
three-input majority junction built on the chaotic growth rule.

A bit is written into a channel as a pair of 2-cell particles near the
channel's open end: centered on the transverse axis for 0, shifted one or
more cells off-axis for 1.  The growing pattern that a pair seeds is read
back downstream by checking whether the live cells inside a probe window
are invariant under reflection about the channel's transverse midline.
"""

from __future__ import annotations

from dataclasses import dataclass, field, asdict
from typing import Optional

import numpy as np

from .engine import B2_S2345, Lattice, RuleBS, run, step

# Particle pairs: two dominoes separated along the channel axis.  The gap
# is small so the pair reacts immediately and seeds one growing pattern.
PARTICLE_GAP = 2
SEED_MARGIN = 2
SETTLE_WINDOW = 5
DEFAULT_STEP_BUDGET = 400


class SceneError(ValueError):
    pass


class GateReadError(RuntimeError):
    """No stable classification at the probe within the step budget."""


@dataclass
class Channel:
    axis: str              # "h" (signal travels along x) or "v" (along y)
    start: tuple[int, int]  # interior origin (x, y)
    length: int
    width: int             # interior width, transverse to the axis
    direction: int = 1     # +1 propagates toward increasing axis coordinate
    seed_anchor: Optional[int] = None  # axis offset of the seed site

    def interior_rect(self) -> tuple[int, int, int, int]:
        x, y = self.start
        if self.axis == "h":
            return (x, y, self.length, self.width)
        return (x, y, self.width, self.length)


@dataclass
class Probe:
    rect: tuple[int, int, int, int]  # (x, y, w, h)
    axis: str = "h"


@dataclass
class Seed:
    cells: list[tuple[int, int]]
    channel: Optional[int] = None
    bit: Optional[int] = None


@dataclass
class ChannelScene:
    lattice: Lattice
    channels: list[Channel] = field(default_factory=list)
    seeds: list[Seed] = field(default_factory=list)
    probes: dict[str, Probe] = field(default_factory=dict)
    wall_rects: list[tuple[int, int, int, int]] = field(default_factory=list)


@dataclass(frozen=True)
class GateConfig:
    """Tunable collision geometry for the majority junction."""

    width: int = 5
    arm_length: int = 40
    offset: int = 1
    junction: str = "cross"   # "cross": square junction box; "tee": box twice as long
    step_budget: int = DEFAULT_STEP_BUDGET
    settle_window: int = SETTLE_WINDOW

    def __post_init__(self):
        if self.width < 3:
            raise SceneError("gate channel width must be at least 3")
        if self.offset < 1:
            raise SceneError("bit-1 offset must be at least 1")
        if self.junction not in ("cross", "tee"):
            raise SceneError(f"unknown junction type {self.junction!r}")
        if self.settle_window < 1:
            raise SceneError("readout window must be nonempty")

    def junction_span(self) -> int:
        return self.width if self.junction == "cross" else 2 * self.width


def build_channel(length: int, width: int) -> ChannelScene:
    """A straight horizontal channel with 1-cell frozen walls above and below."""
    if length < 10:
        raise SceneError(f"channel length must be at least 10, got {length}")
    if width < 3:
        raise SceneError(f"channel width must be at least 3, got {width}")
    lattice = Lattice.empty(length, width + 2)
    top = (0, 0, length, 1)
    bottom = (0, width + 1, length, 1)
    for x, y, w, h in (top, bottom):
        lattice = lattice.with_frozen_rect(x, y, w, h, alive=False)
    chan = Channel(axis="h", start=(0, 1), length=length, width=width,
                   direction=1, seed_anchor=SEED_MARGIN)
    return ChannelScene(lattice=lattice, channels=[chan], wall_rects=[top, bottom])


def _particle_pair(channel: Channel, bit: int, offset: int) -> list[tuple[int, int]]:
    """Seed cells for a bit: two dominoes at the channel's seed anchor.

    With an odd interior width the dominoes lie along the axis on the
    center line; with an even width they straddle the two center lines.
    Bit 1 shifts the whole pair transversally by ``offset``.
    """
    x0, y0 = channel.start
    w = channel.width
    margin = channel.seed_anchor if channel.seed_anchor is not None else SEED_MARGIN
    span = PARTICLE_GAP + (4 if w % 2 == 1 else 2)
    if channel.direction >= 0:
        anchor = margin
    else:
        anchor = channel.length - margin - span
    cells: list[tuple[int, int]] = []
    if w % 2 == 1:
        mid = (w - 1) // 2
        for a in (anchor, anchor + 2 + PARTICLE_GAP):
            cells.extend([(a, mid), (a + 1, mid)])
    else:
        lo = w // 2 - 1
        for a in (anchor, anchor + 1 + PARTICLE_GAP):
            cells.extend([(a, lo), (a, lo + 1)])
    shift = bit * offset
    if channel.axis == "h":
        return [(x0 + a, y0 + t + shift) for a, t in cells]
    # vertical channels swap axis/transverse roles
    return [(x0 + t + shift, y0 + a) for a, t in cells]


def place_signal(scene: ChannelScene, channel: int, bit: int,
                 offset: int = 1) -> ChannelScene:
    """Seed a bit into a channel; returns a new scene."""
    if bit not in (0, 1):
        raise SceneError(f"bit must be 0 or 1, got {bit}")
    if not 0 <= channel < len(scene.channels):
        raise SceneError(f"unknown channel {channel}")
    chan = scene.channels[channel]
    cells = _particle_pair(chan, bit, offset)
    for x, y in cells:
        if scene.lattice.state[y, x] or scene.lattice.frozen[y, x]:
            raise SceneError(f"seed region occupied at ({x}, {y})")
    lattice = scene.lattice.with_cells(cells)
    return ChannelScene(
        lattice=lattice,
        channels=scene.channels,
        seeds=scene.seeds + [Seed(channel=channel, bit=bit, cells=cells)],
        probes=scene.probes,
        wall_rects=scene.wall_rects,
    )


def classify_output(lattice: Lattice, probe: Probe | tuple[int, int, int, int]):
    """Classify the live pattern inside a probe window.

    Returns 0 for a transversally symmetric pattern, 1 for an asymmetric
    one, and ``None`` when the window holds no live cells.
    """
    if not isinstance(probe, Probe):
        probe = Probe(rect=tuple(probe))
    x, y, w, h = probe.rect
    if x < 0 or y < 0 or x + w > lattice.width or y + h > lattice.height:
        raise SceneError(f"probe {probe.rect} outside {lattice.width}x{lattice.height} lattice")
    sub = lattice.state[y : y + h, x : x + w]
    if not sub.any():
        return None
    mirrored = np.flipud(sub) if probe.axis == "h" else np.fliplr(sub)
    return 0 if np.array_equal(sub, mirrored) else 1


def build_majority_scene(config: GateConfig, a: int, b: int, c: int) -> ChannelScene:
    """Cross-junction scene: N, W, S input arms seeded with a, b, c; E output arm probed.

    Bit-1 offsets are fixed so that no two equal input vectors other than
    mirror-identical ones produce a scene symmetric about the output
    channel's midline: the north arm shifts east, the south arm west, the
    west arm south.
    """
    for name, bit in (("a", a), ("b", b), ("c", c)):
        if bit not in (0, 1):
            raise SceneError(f"input {name} must be 0 or 1, got {bit}")
    w, L = config.width, config.arm_length
    jw = config.junction_span()
    min_arm = SEED_MARGIN + PARTICLE_GAP + 6
    if L < min_arm:
        raise SceneError(f"arm length {L} too short for particle placement (need >= {min_arm})")
    W_total = 2 * L + jw
    H_total = 2 * L + w

    lattice = Lattice.empty(W_total, H_total)
    walls = [
        (0, 0, L, L),                    # NW block
        (L + jw, 0, L, L),               # NE block
        (0, L + w, L, L),                # SW block
        (L + jw, L + w, L, L),           # SE block
    ]
    if jw > w:
        walls.append((L + w, 0, jw - w, L))          # N filler east of the vertical arms
        walls.append((L + w, L + w, jw - w, L))      # S filler
    for rect in walls:
        lattice = lattice.with_frozen_rect(*rect, alive=False)

    north = Channel(axis="v", start=(L, 0), length=L, width=w, direction=1,
                    seed_anchor=SEED_MARGIN)
    west = Channel(axis="h", start=(0, L), length=L, width=w, direction=1,
                   seed_anchor=SEED_MARGIN)
    south = Channel(axis="v", start=(L, L + w), length=L, width=w, direction=-1,
                    seed_anchor=SEED_MARGIN)
    east = Channel(axis="h", start=(L + jw, L), length=L, width=w, direction=1)

    scene = ChannelScene(lattice=lattice, channels=[north, west, south, east],
                         wall_rects=walls)
    # offset directions: N -> +x, W -> +y, S -> -x (breaks the N/S mirror)
    scene = place_signal(scene, 0, a, offset=config.offset)
    scene = place_signal(scene, 1, b, offset=config.offset)
    scene = place_signal(scene, 2, c, offset=-config.offset)

    probe_x = L + jw + max(4, L - 6)
    probe = Probe(rect=(probe_x, L, 2, w), axis="h")
    scene.probes["out"] = probe
    return scene


def read_probe(scene: ChannelScene, rule: RuleBS, probe_name: str,
               step_budget: int, settle_window: int) -> int:
    """Run a scene until the probe fills, then classify with a settle re-check.

    The classification is taken at the first step the probe window becomes
    non-empty and confirmed ``settle_window`` steps later; a disagreement
    or an empty probe at budget exhaustion raises :class:`GateReadError`.
    """
    probe = scene.probes[probe_name]
    lattice = scene.lattice
    first: Optional[int] = None
    for _ in range(step_budget):
        lattice = step(lattice, rule)
        cls = classify_output(lattice, probe)
        if cls is None:
            continue
        first = cls
        break
    if first is None:
        raise GateReadError(f"no pattern reached probe {probe_name!r} "
                            f"within {step_budget} steps")
    recheck = run(lattice, rule, settle_window)
    confirmed = classify_output(recheck, probe)
    if confirmed != first:
        raise GateReadError(
            f"unstable readout at probe {probe_name!r}: {first} then {confirmed}")
    return first


def eval_majority_ca(config: GateConfig, a: int, b: int, c: int,
                     rule: RuleBS = B2_S2345) -> int:
    """Evaluate the junction for one input triple; returns the output bit."""
    scene = build_majority_scene(config, a, b, c)
    return read_probe(scene, rule, "out", config.step_budget, config.settle_window)


MAJ_TRUTH = {
    (0, 0, 0): 0, (0, 0, 1): 0, (0, 1, 0): 0, (0, 1, 1): 1,
    (1, 0, 0): 0, (1, 0, 1): 1, (1, 1, 0): 1, (1, 1, 1): 1,
}


def default_calibration_grid() -> list[GateConfig]:
    """The documented search grid: 5 widths x 2 offsets x 5 arm lengths x 2 junctions."""
    grid = []
    for junction in ("cross", "tee"):
        for width in range(4, 9):
            for offset in (1, 2):
                for arm in (20, 30, 40, 50, 60):
                    grid.append(GateConfig(width=width, arm_length=arm,
                                           offset=offset, junction=junction))
    return grid


@dataclass
class ConfigOutcome:
    config: GateConfig
    rows_passed: int
    failed_row: Optional[tuple[int, int, int]] = None
    observed: Optional[int] = None
    error: Optional[str] = None

    def to_dict(self) -> dict:
        d = {"config": asdict(self.config), "rows_passed": self.rows_passed}
        if self.failed_row is not None:
            d["failed_row"] = list(self.failed_row)
            d["observed"] = self.observed
        if self.error is not None:
            d["error"] = self.error
        return d


@dataclass
class CalibrationResult:
    golden: Optional[GateConfig]
    outcomes: list[ConfigOutcome]

    def to_dict(self) -> dict:
        return {
            "found": self.golden is not None,
            "golden": asdict(self.golden) if self.golden else None,
            "configs_tried": len(self.outcomes),
            "outcomes": [o.to_dict() for o in self.outcomes],
        }


def check_config(config: GateConfig, rule: RuleBS = B2_S2345) -> ConfigOutcome:
    """Evaluate all 8 majority rows under one config, stopping at the first miss."""
    passed = 0
    for row in sorted(MAJ_TRUTH):
        expected = MAJ_TRUTH[row]
        try:
            got = eval_majority_ca(config, *row, rule=rule)
        except GateReadError as exc:
            return ConfigOutcome(config, passed, failed_row=row, error=str(exc))
        if got != expected:
            return ConfigOutcome(config, passed, failed_row=row, observed=got)
        passed += 1
    return ConfigOutcome(config, passed)


def calibrate_gate(grid: Optional[list[GateConfig]] = None,
                   rule: RuleBS = B2_S2345) -> CalibrationResult:
    """Search a config grid for one that reproduces the full majority table.

    Returns the first fully passing config (search stops there) together
    with the per-config outcome report; exhaustion is reported, not raised.
    """
    if grid is None:
        grid = default_calibration_grid()
    outcomes: list[ConfigOutcome] = []
    for config in grid:
        outcome = check_config(config, rule)
        outcomes.append(outcome)
        if outcome.rows_passed == 8:
            return CalibrationResult(golden=config, outcomes=outcomes)
    return CalibrationResult(golden=None, outcomes=outcomes)
