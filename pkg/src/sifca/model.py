"""Terminal layouts: one multicast source plus five sinks on a unit circle.

The reference layout puts the five sinks A..E on the unit circle with A at
+36 degrees, B at -36 degrees and the rest spaced 72 degrees apart, so the
midpoint of chord AB sits on the +x axis.  Two perturbation families are
supported:

* class I moves the *source* away from the circumcenter to polar (r, theta),
  theta measured from the +x axis toward A;
* class II keeps the source at the circumcenter and moves the sink D away
  from its home position at 180 degrees, by alpha degrees toward C.

Both cost models are symmetric under the dihedral symmetry of the pentagon,
so angles are usually folded into a canonical sector before evaluation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .geometry import AngleDeg, Point

SINK_LABELS = ("A", "B", "C", "D", "E")

# polar directions of the sinks, degrees counterclockwise from +x
SINK_DIRECTIONS_DEG = {"A": 36.0, "B": -36.0, "C": -108.0, "D": 180.0, "E": 108.0}

# adjacent sink pairs walking around the circle
ADJACENT_SINK_PAIRS = (("A", "B"), ("B", "C"), ("C", "D"), ("D", "E"), ("E", "A"))

CANONICAL_SECTOR_I_DEG = 36.0
CLASS_II_ALPHA_LIMIT_DEG = 48.0


def _unit(angle_deg: float) -> Point:
    a = math.radians(angle_deg)
    return Point(math.cos(a), math.sin(a))


REGULAR_SINKS = {name: _unit(d) for name, d in SINK_DIRECTIONS_DEG.items()}


@dataclass(frozen=True)
class NodeClassIConfig:
    """Source displaced to polar (r, theta) about the circumcenter."""

    r: float
    theta_deg: AngleDeg

    def __post_init__(self) -> None:
        if self.r < 0.0:
            raise ValueError(f"r must be non-negative, got {self.r}")


@dataclass(frozen=True)
class NodeClassIIConfig:
    """Sink D displaced to polar (r, alpha) about the source, alpha measured
    from D's home direction toward C."""

    r: float
    alpha_deg: AngleDeg

    def __post_init__(self) -> None:
        if self.r < 0.0:
            raise ValueError(f"r must be non-negative, got {self.r}")


@dataclass(frozen=True)
class TerminalSet:
    source: Point
    sinks: dict[str, Point] = field(compare=False)

    def sink(self, name: str) -> Point:
        return self.sinks[name]

    def coords(self) -> np.ndarray:
        """(6, 2) array ordered source, A, B, C, D, E."""
        rows = [self.source.as_tuple()] + [self.sinks[n].as_tuple() for n in SINK_LABELS]
        return np.asarray(rows, dtype=np.float64)


def canonicalize_class_i(theta_deg: AngleDeg) -> AngleDeg:
    """Fold any class I angle into the canonical sector [0, 36] degrees.

    The layout repeats every 72 degrees and is mirror symmetric about the
    chord-midpoint axis, so theta, -theta and theta+72 all describe congruent
    configurations.
    """
    t = math.fmod(theta_deg, 72.0)
    if t < 0.0:
        t += 72.0
    if t > 36.0:
        t = 72.0 - t
    return t


def terminals_class_i(cfg: NodeClassIConfig) -> TerminalSet:
    """Regular sinks, source at polar (r, theta) about the circumcenter."""
    a = math.radians(cfg.theta_deg)
    src = Point(cfg.r * math.cos(a), cfg.r * math.sin(a))
    return TerminalSet(source=src, sinks=dict(REGULAR_SINKS))


def terminals_class_ii(cfg: NodeClassIIConfig) -> TerminalSet:
    """Source at the circumcenter, sink D at polar (r, alpha) about it.

    Positive alpha rotates D from its home direction (180 degrees) toward C,
    which is the direction in which the relay angle at the source toward E
    grows: at alpha the D-source-E angle is 72 + alpha degrees.
    """
    d_dir = 180.0 + cfg.alpha_deg
    a = math.radians(d_dir)
    sinks = dict(REGULAR_SINKS)
    sinks["D"] = Point(cfg.r * math.cos(a), cfg.r * math.sin(a))
    return TerminalSet(source=Point(0.0, 0.0), sinks=sinks)
