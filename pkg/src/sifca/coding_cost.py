"""Network coding cost and feasibility for the displaced-terminal layouts.

The coding construction ships two half-unit flows from the source to
every sink, merging and re-encoding them at five relay points.  Its
total cost reduces to a closed form in both layouts:

* moving-center: half the sum of the distances from the source to five
  fixed anchor points at radius ``2 sin 66`` in the edge-midpoint
  directions of the sink pentagon (equivalently a sum of five radicals
  in ``r`` and ``theta``);
* moving-vertex: a constant ``3 cos 24`` for the undisturbed part plus
  two half-length legs tying the moved sink into the relay mesh.

Both cost functions are exposed twice on purpose.  The radical form is
the hot kernel used by the sweeps; the anchor-sum form rebuilds the
relay geometry point by point and exists so tests can cross-check the
two routes against each other rather than trusting a single
transcription.

Feasibility is where the construction stays a genuine coding gain: all
guarding angles must stay strictly below 120 degrees (at 120 the relay
legs fold into plain routing), and the moving terminal must stay
strictly inside the circumcircle (moving-center) or away from the
source (moving-vertex).
"""

from __future__ import annotations

from dataclasses import dataclass
import math

from . import _kernels
from .geometry import MODEL, Point, angle_at, distance, polar_to_point
from .model import (
    ADJACENT_SINK_PAIRS,
    NodeClassIConfig,
    NodeClassIIConfig,
    REGULAR_SINKS,
    terminals_class_ii,
)

ANGLE_LIMIT_DEG = 120.0


@dataclass(frozen=True)
class FeasibilityVerdict:
    """Outcome of a feasibility check.

    ``violations`` holds one ``(constraint, measured, threshold)``
    triple per failed constraint; angle entries are in degrees.
    ``feasible`` is true exactly when the tuple is empty.
    """

    feasible: bool
    violations: tuple[tuple[str, float, float], ...]


def _verdict(violations: list[tuple[str, float, float]]) -> FeasibilityVerdict:
    return FeasibilityVerdict(not violations, tuple(violations))


def relay_anchor_points() -> dict[str, Point]:
    """Anchor points of the coding construction, keyed by sink pair.

    One anchor per adjacent sink pair, at radius ``2 sin 66`` from the
    circumcenter in the direction of that pair's edge midpoint.  The
    half-sum of source-to-anchor distances is the coding cost for the
    moving-center layout.
    """
    anchors: dict[str, Point] = {}
    for a, b in ADJACENT_SINK_PAIRS:
        pa = REGULAR_SINKS[a]
        pb = REGULAR_SINKS[b]
        direction = math.degrees(math.atan2(pa.y + pb.y, pa.x + pb.x))
        anchors[a + b] = polar_to_point(MODEL.anchor_radius, direction)
    return anchors


def nc_cost_class_i(cfg: NodeClassIConfig) -> float:
    """Coding cost with the center terminal displaced to (r, theta).

    Radical form: half the sum of five square roots whose phases are
    theta, theta+72, theta+144, 144-theta and 72-theta degrees.  The
    phase set is invariant under theta -> -theta and theta -> 72-theta,
    which is the cost's mirror symmetry.  Negative radii are rejected
    by the config type itself.
    """
    return float(_kernels.nc_class_i(cfg.r, cfg.theta_deg))


def nc_cost_class_i_anchor_sum(cfg: NodeClassIConfig) -> float:
    """Anchor-sum form of nc_cost_class_i, rebuilt from plain geometry.

    Independent of the radical transcription: places the five anchors
    explicitly and sums half the source-to-anchor distances.  Exists as
    the cross-check route; agreement with the radical form is asserted
    in tests rather than assumed.
    """
    source = polar_to_point(cfg.r, cfg.theta_deg)
    return 0.5 * sum(distance(source, p) for p in relay_anchor_points().values())


def nc_feasible_class_i(cfg: NodeClassIConfig) -> FeasibilityVerdict:
    """Where the moving-center coding construction applies.

    The source must sit strictly inside the circumcircle and see every
    adjacent sink pair under strictly less than 120 degrees.  Angles
    are checked for all five pairs so the verdict is valid outside the
    canonical sector too.
    """
    violations: list[tuple[str, float, float]] = []
    if cfg.r >= 1.0:
        violations.append(("source_inside_circumcircle", cfg.r, 1.0))
    source = polar_to_point(cfg.r, cfg.theta_deg)
    for a, b in ADJACENT_SINK_PAIRS:
        pa = REGULAR_SINKS[a]
        pb = REGULAR_SINKS[b]
        if source == pa or source == pb:
            # Coincides with a sink only on the circle itself, which the
            # radial constraint has already rejected.
            continue
        measured = angle_at(source, pa, pb)
        if measured >= ANGLE_LIMIT_DEG:
            violations.append((f"angle_{a}O{b}", measured, ANGLE_LIMIT_DEG))
    return _verdict(violations)


def nc_cost_class_ii(cfg: NodeClassIIConfig) -> float:
    """Coding cost with one pentagon vertex displaced to distance r.

    The four undisturbed sinks contribute the constant 3 cos 24; the
    moved sink adds two half-length legs whose radicals carry the
    2r cross terms at phases 132 plus and minus alpha.
    """
    return float(_kernels.nc_class_ii(cfg.r, cfg.alpha_deg))


def nc_feasible_class_ii(cfg: NodeClassIIConfig) -> FeasibilityVerdict:
    """Where the moving-vertex coding construction applies.

    Three angles guard the construction, all strictly below 120
    degrees: at the source between the moved sink and its retained
    neighbor, and at the two ends of the edge joining the moved sink to
    its other neighbor.  A moved sink that lands on the source leaves
    the angles undefined and is reported as a coincidence violation.
    """
    if cfg.r == 0.0:
        return _verdict([("terminal_coincidence", 0.0, 0.0)])
    terminals = terminals_class_ii(cfg)
    source = terminals.source
    c = terminals.sinks["C"]
    d = terminals.sinks["D"]
    e = terminals.sinks["E"]
    violations: list[tuple[str, float, float]] = []
    for name, vertex, p, q in (
        ("angle_DOE", source, d, e),
        ("angle_OCD", c, source, d),
        ("angle_CDO", d, c, source),
    ):
        measured = angle_at(vertex, p, q)
        if measured >= ANGLE_LIMIT_DEG:
            violations.append((name, measured, ANGLE_LIMIT_DEG))
    return _verdict(violations)
