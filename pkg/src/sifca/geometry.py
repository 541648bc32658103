"""Planar primitives shared by every cost model in this package.

Angles are handled in degrees throughout the public surface; conversion to
radians happens at the trig call sites only.  All coordinates are plain
float64 pairs, either as :class:`Point` instances or ``(x, y)`` tuples.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

AngleDeg = float

_EPS_COINCIDENT = 1e-12


class DegenerateAngleError(ValueError):
    """Raised when an angle is requested at a vertex with a zero-length ray."""


@dataclass(frozen=True)
class Point:
    x: float
    y: float

    def as_tuple(self) -> tuple[float, float]:
        return (self.x, self.y)

    def __iter__(self):
        yield self.x
        yield self.y


ORIGIN = Point(0.0, 0.0)


@dataclass(frozen=True)
class ModelConstants:
    """Fixed quantities of the unit-circumradius pentagon layout.

    ``anchor_radius`` is the distance from the circumcenter to the apex of an
    equilateral triangle erected outward on a pentagon edge; the five apexes
    sit at the edge-midpoint directions.  ``flow_rate`` is the per-edge flow
    carried by each branch of the coded multicast, and ``lune_threshold_deg``
    is the angular limit past which a relay stops being useful.
    """

    circumradius: float = 1.0
    pentagon_side: float = 2.0 * math.sin(math.radians(36.0))
    anchor_radius: float = 2.0 * math.sin(math.radians(66.0))
    flow_rate: float = 0.5
    lune_threshold_deg: float = 120.0


MODEL = ModelConstants()


def distance(p: Point | tuple[float, float], q: Point | tuple[float, float]) -> float:
    """Euclidean distance between two points."""
    px, py = p
    qx, qy = q
    return math.hypot(px - qx, py - qy)


def polar_to_point(
    r: float,
    angle_deg: AngleDeg,
    origin: Point = ORIGIN,
    reference_deg: AngleDeg = 0.0,
) -> Point:
    """Point at distance ``r`` from ``origin``, ``angle_deg`` counterclockwise
    from the ``reference_deg`` direction.

    Negative ``r`` is rejected; use the opposite angle instead.
    """
    if r < 0.0:
        raise ValueError(f"radius must be non-negative, got {r}")
    a = math.radians(reference_deg + angle_deg)
    return Point(origin.x + r * math.cos(a), origin.y + r * math.sin(a))


def angle_at(
    vertex: Point | tuple[float, float],
    p: Point | tuple[float, float],
    q: Point | tuple[float, float],
) -> AngleDeg:
    """Unsigned angle p-vertex-q in degrees, in [0, 180].

    Uses atan2 of the cross/dot pair, which stays accurate for angles close
    to 0 or 180 where the acos form loses digits.
    """
    vx, vy = vertex
    px, py = p
    qx, qy = q
    ux, uy = px - vx, py - vy
    wx, wy = qx - vx, qy - vy
    if math.hypot(ux, uy) <= _EPS_COINCIDENT or math.hypot(wx, wy) <= _EPS_COINCIDENT:
        raise DegenerateAngleError("angle undefined: a ray endpoint coincides with the vertex")
    cross = ux * wy - uy * wx
    dot = ux * wx + uy * wy
    return math.degrees(math.atan2(abs(cross), dot))


def _equilateral_apex(
    px: float, py: float, qx: float, qy: float, ox: float, oy: float
) -> tuple[float, float]:
    """Apex of the equilateral triangle on segment PQ, on the side away from (ox, oy)."""
    mx, my = 0.5 * (px + qx), 0.5 * (py + qy)
    # unit normal of PQ
    dx, dy = qx - px, qy - py
    L = math.hypot(dx, dy)
    nx, ny = -dy / L, dx / L
    h = 0.5 * math.sqrt(3.0) * L
    # pick the side whose normal points away from the reference point
    if (ox - mx) * nx + (oy - my) * ny > 0.0:
        nx, ny = -nx, -ny
    return (mx + h * nx, my + h * ny)


def fermat_point(
    a: Point | tuple[float, float],
    b: Point | tuple[float, float],
    c: Point | tuple[float, float],
) -> tuple[Point, float]:
    """Geometric median of a triangle: the point minimising the summed
    distance to the three corners, plus that minimal total.

    Closed-form construction: when some corner subtends 120 degrees or more
    the corner itself is the minimiser; otherwise the minimiser is the
    intersection of two corner-to-outer-apex segments and the total equals
    the corner-to-apex distance (both evaluated, with the straight-line
    total preferred since it is exact).
    """
    ax, ay = a
    bx, by = b
    cx, cy = c

    dab = math.hypot(bx - ax, by - ay)
    dbc = math.hypot(cx - bx, cy - by)
    dca = math.hypot(ax - cx, ay - cy)

    # coincident-corner degeneracies: the doubled corner wins outright
    if dab <= _EPS_COINCIDENT and dca <= _EPS_COINCIDENT:
        return (Point(ax, ay), 0.0)
    if dab <= _EPS_COINCIDENT:
        return (Point(ax, ay), dca)
    if dbc <= _EPS_COINCIDENT:
        return (Point(bx, by), dab)
    if dca <= _EPS_COINCIDENT:
        return (Point(ax, ay), dab)

    # corner rule: angle >= 120 degrees iff cos <= -1/2
    for (vx, vy, p1x, p1y, p2x, p2y, opp1, opp2) in (
        (ax, ay, bx, by, cx, cy, dab, dca),
        (bx, by, ax, ay, cx, cy, dab, dbc),
        (cx, cy, ax, ay, bx, by, dca, dbc),
    ):
        ux, uy = p1x - vx, p1y - vy
        wx, wy = p2x - vx, p2y - vy
        if ux * wx + uy * wy <= -0.5 * opp1 * opp2:
            return (Point(vx, vy), opp1 + opp2)

    ea = _equilateral_apex(bx, by, cx, cy, ax, ay)
    eb = _equilateral_apex(ax, ay, cx, cy, bx, by)
    # intersect segment a->ea with b->eb
    r1x, r1y = ea[0] - ax, ea[1] - ay
    r2x, r2y = eb[0] - bx, eb[1] - by
    den = r1x * r2y - r1y * r2x
    t = ((bx - ax) * r2y - (by - ay) * r2x) / den
    px, py = ax + t * r1x, ay + t * r1y
    total = math.hypot(ea[0] - ax, ea[1] - ay)
    return (Point(px, py), total)
