"""Parameter sweeps, cost-advantage fields and region statistics.

A sweep evaluates coding cost and optimal routing cost on a polar grid
and records their ratio (cost advantage) wherever the coding
construction is feasible.  The moving-center sweep prices routing with
the published closed cases; the moving-vertex sweep has no closed
forms, so each cell runs the exact tree oracle.

Region extraction turns a field into the quantities the experiments
talk about: the largest radius with cost advantage at least one along
each angle ray (interpolated between grid cells), how circular that
boundary is, where the advantage peaks, and for the moving-vertex
layout how close the moved sink may come to the source while coding
still wins.

The monotonicity report replicates the numerically established slope
claims: along each angle ray the coding cost must rise at least as
fast as every routing case, and at fixed radius inside the advantage
band the coding-minus-routing gap must not decrease with angle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .geometry import AngleDeg
from .routing_cost import _oracle_tables

DEFAULT_R_RANGE = {"I": (0.0, 0.5, 0.0025), "II": (0.0, 1.5, 0.005)}
DEFAULT_ANGLE_RANGE = {"I": (0.0, 36.0, 0.25), "II": (0.0, 48.0, 0.25)}

# Radii at which the angular slope of the gap is scanned, and the scan
# and difference step for that scan.
THETA_SLOPE_RADII = (0.20, 0.21, 0.22, 0.23, 0.24)
THETA_SCAN_STEP_DEG = 0.05

SLOPE_TOLERANCE = -1e-8
MIN_DIFF_STEP = 1e-7


class AllInfeasibleError(ValueError):
    """No cell of the field admits the coding construction."""


@dataclass(frozen=True)
class SweepSpec:
    """Grid description for one sweep.

    Ranges are (min, max, step); radii in circumradius units, angles in
    degrees.  The class picks which layout moves: "I" displaces the
    source, "II" displaces one pentagon vertex.
    """

    node_class: str
    r_range: tuple[float, float, float]
    angle_range: tuple[float, float, float]

    def __post_init__(self) -> None:
        if self.node_class not in ("I", "II"):
            raise ValueError(f"node_class must be 'I' or 'II', got {self.node_class!r}")
        for name, (lo, hi, step) in (
            ("r_range", self.r_range),
            ("angle_range", self.angle_range),
        ):
            if step <= 0.0:
                raise ValueError(f"{name} step must be positive, got {step}")
            if lo > hi:
                raise ValueError(f"{name} must have min <= max, got {lo} > {hi}")

    @classmethod
    def default(cls, node_class: str) -> "SweepSpec":
        if node_class not in DEFAULT_R_RANGE:
            raise ValueError(f"node_class must be 'I' or 'II', got {node_class!r}")
        return cls(node_class, DEFAULT_R_RANGE[node_class], DEFAULT_ANGLE_RANGE[node_class])

    def r_values(self) -> np.ndarray:
        return _axis(self.r_range)

    def angle_values(self) -> np.ndarray:
        return _axis(self.angle_range)


def _axis(rng: tuple[float, float, float]) -> np.ndarray:
    lo, hi, step = rng
    count = int(math.floor((hi - lo) / step + 1e-9)) + 1
    return lo + step * np.arange(count, dtype=np.float64)


@dataclass(frozen=True)
class CASample:
    """One grid cell: costs, feasibility, and the advantage ratio.

    ``ca`` is None when the coding construction is infeasible at the
    cell; costs are still reported.
    """

    r: float
    angle_deg: AngleDeg
    nc_cost: float
    route_cost: float
    feasible: bool
    ca: float | None


@dataclass(frozen=True, eq=False)
class CAField:
    """Sampled cost-advantage field over a sweep grid.

    Arrays are indexed [radius, angle].  ``ca`` carries NaN at
    infeasible cells; ``argmin_case`` is the winning closed case per
    cell for the moving-center layout and None for the moving-vertex
    layout.
    """

    spec: SweepSpec
    r_values: np.ndarray
    angle_values: np.ndarray
    nc_cost: np.ndarray
    route_cost: np.ndarray
    feasible: np.ndarray
    ca: np.ndarray
    argmin_case: np.ndarray | None

    def sample(self, i: int, j: int) -> CASample:
        feasible = bool(self.feasible[i, j])
        return CASample(
            r=float(self.r_values[i]),
            angle_deg=float(self.angle_values[j]),
            nc_cost=float(self.nc_cost[i, j]),
            route_cost=float(self.route_cost[i, j]),
            feasible=feasible,
            ca=float(self.ca[i, j]) if feasible else None,
        )

    @property
    def shape(self) -> tuple[int, int]:
        return self.nc_cost.shape


@dataclass(frozen=True)
class RegionSummary:
    """Where coding beats routing, reduced to a few numbers.

    ``boundary_radius_per_angle`` lists, per angle ray, the largest
    radius at which the advantage is still at least the threshold
    (linearly interpolated between the bracketing cells).
    ``min_ca_distance_to_moved_neighbor`` is populated only for the
    moving-vertex layout: the smallest source-to-moved-sink distance
    among qualifying cells.  ``empty`` flags a field with no qualifying
    cell, in which case the boundary statistics are NaN.
    """

    max_ca: float
    argmax: tuple[float, float]
    boundary_radius_per_angle: tuple[tuple[float, float], ...]
    mean_boundary_radius: float
    max_boundary_deviation: float
    min_ca_distance_to_moved_neighbor: float | None
    empty: bool


@dataclass(frozen=True)
class MonotonicityReport:
    """Minima of the replicated slope quantities and their pass flags.

    ``y_mins[i]`` is the smallest observed d(coding)/dr - d(case i)/dr
    over the sampled box; ``theta_slope_mins`` maps each fixed radius
    to the smallest observed d(gap)/d(theta); both pass at -1e-8.
    ``gap_slope_at_zero`` is the largest magnitude of d(gap)/d(theta)
    at theta = 0 across the fixed radii, a symmetry sanity value.
    """

    r_max: float
    r_step: float
    theta_samples: tuple[float, ...]
    y_mins: tuple[float, float, float, float, float]
    y_pass: bool
    theta_slope_mins: tuple[tuple[float, float], ...]
    theta_pass: bool
    gap_slope_at_zero: float

    @property
    def passed(self) -> bool:
        return self.y_pass and self.theta_pass


def cost_advantage(nc: float, route: float) -> float:
    """Ratio of optimal routing cost to coding cost.

    Above one, coding is strictly cheaper than the best routing tree.
    """
    if nc <= 0.0 or route <= 0.0:
        raise ValueError(f"costs must be positive, got nc={nc}, route={route}")
    return route / nc


def sweep_class_i(spec: SweepSpec) -> CAField:
    """Evaluate the moving-center grid: coding cost against the closed
    routing minimum, with feasibility and advantage per cell."""
    if spec.node_class != "I":
        raise ValueError(f"expected a class I spec, got class {spec.node_class}")
    rv = spec.r_values()
    av = spec.angle_values()
    shape = (rv.size, av.size)
    nc = np.empty(shape)
    route = np.empty(shape)
    feas = np.empty(shape, dtype=np.int64)
    case = np.empty(shape, dtype=np.int64)
    _kernels.class_i_sweep_kernel(rv, av, nc, route, feas, case)
    return _assemble_field(spec, rv, av, nc, route, feas, case)


def sweep_class_ii(spec: SweepSpec) -> CAField:
    """Evaluate the moving-vertex grid: coding cost against the exact
    tree oracle, with feasibility and advantage per cell."""
    if spec.node_class != "II":
        raise ValueError(f"expected a class II spec, got class {spec.node_class}")
    rv = spec.r_values()
    av = spec.angle_values()
    shape = (rv.size, av.size)
    nc = np.empty(shape)
    route = np.empty(shape)
    feas = np.empty(shape, dtype=np.int64)
    tables = _oracle_tables(6)
    _kernels.class_ii_sweep_kernel(
        rv, av, *tables[:3], *tables[3:], 1e-10, 100_000, nc, route, feas
    )
    return _assemble_field(spec, rv, av, nc, route, feas, None)


def _assemble_field(spec, rv, av, nc, route, feas, case) -> CAField:
    feasible = feas.astype(bool)
    ca = np.where(feasible, route / nc, math.nan)
    return CAField(
        spec=spec,
        r_values=rv,
        angle_values=av,
        nc_cost=nc,
        route_cost=route,
        feasible=feasible,
        ca=ca,
        argmin_case=case,
    )


def max_ca(field: CAField) -> tuple[tuple[float, float], float]:
    """Peak advantage over feasible cells.

    Grid scan with deterministic ties: the first strict improvement
    wins, radii ascending then angles ascending, so ties resolve to the
    smallest radius and then the smallest angle.
    """
    best = -math.inf
    where = None
    nr, na = field.shape
    for i in range(nr):
        for j in range(na):
            if field.feasible[i, j] and field.ca[i, j] > best:
                best = float(field.ca[i, j])
                where = (float(field.r_values[i]), float(field.angle_values[j]))
    if where is None:
        raise AllInfeasibleError("no feasible cell in the field")
    return where, best


def extract_region(field: CAField, threshold: float = 1.0) -> RegionSummary:
    """Boundary and peak statistics of the advantage region.

    Walks each angle ray outward-in to find the last cell at or above
    the threshold, then interpolates the crossing radius against the
    next cell out (when that cell is feasible).  An empty region is a
    result, not an error.
    """
    nr, na = field.shape
    qualifying = field.feasible & (field.ca >= threshold)
    if not qualifying.any():
        return RegionSummary(
            max_ca=math.nan,
            argmax=(math.nan, math.nan),
            boundary_radius_per_angle=(),
            mean_boundary_radius=math.nan,
            max_boundary_deviation=math.nan,
            min_ca_distance_to_moved_neighbor=None,
            empty=True,
        )
    boundary: list[tuple[float, float]] = []
    for j in range(na):
        rows = np.flatnonzero(qualifying[:, j])
        if rows.size == 0:
            continue
        i = int(rows[-1])
        r_edge = float(field.r_values[i])
        if i + 1 < nr and field.feasible[i + 1, j]:
            ca_in = float(field.ca[i, j])
            ca_out = float(field.ca[i + 1, j])
            if ca_out < threshold <= ca_in and ca_in > ca_out:
                step = float(field.r_values[i + 1]) - r_edge
                r_edge += step * (ca_in - threshold) / (ca_in - ca_out)
        boundary.append((float(field.angle_values[j]), r_edge))
    radii = np.array([b[1] for b in boundary])
    mean_radius = float(radii.mean())
    argmax, peak = max_ca(field)
    min_distance = None
    if field.spec.node_class == "II":
        # the moved sink sits at radius r from the source, so the
        # source-to-sink distance of a cell is its radius
        rows = np.flatnonzero(qualifying.any(axis=1))
        min_distance = float(field.r_values[rows[0]])
    return RegionSummary(
        max_ca=peak,
        argmax=argmax,
        boundary_radius_per_angle=tuple(boundary),
        mean_boundary_radius=mean_radius,
        max_boundary_deviation=float(np.abs(radii - mean_radius).max()),
        min_ca_distance_to_moved_neighbor=min_distance,
        empty=False,
    )


def monotonicity_report(
    r_max: float = 0.24,
    theta_samples=None,
    r_step: float = 1e-4,
) -> MonotonicityReport:
    """Replicate the slope claims on the advantage band.

    Radial part: central differences of d(coding)/dr - d(case i)/dr at
    radii k*r_step strictly inside (0, r_max), for every sampled angle
    and every case (cases four and five under their selected subcase
    labels).  Angular part: central differences of the coding-minus-
    routing gap along theta at the fixed radii 0.20 to 0.24, scanned
    over the canonical sector in 0.05 degree steps.
    """
    if r_max <= 0.0 or r_max > 0.24:
        raise ValueError(f"r_max must lie in (0, 0.24], got {r_max}")
    if r_step < MIN_DIFF_STEP:
        raise ValueError(
            f"r_step below {MIN_DIFF_STEP:g} is too small for stable differencing"
        )
    if theta_samples is None:
        theta_samples = np.arange(0.0, 36.25, 0.25)
    tvals = np.asarray(theta_samples, dtype=np.float64)
    if tvals.size == 0:
        raise ValueError("theta_samples must be nonempty")

    y_mins = np.empty(5)
    _kernels.radial_slack_mins(r_max, r_step, tvals, y_mins)

    slope_mins = []
    at_zero = 0.0
    for r in THETA_SLOPE_RADII:
        if r > r_max:
            continue
        worst, d0 = _kernels.angular_gap_stats(
            r, 0.0, 36.0, THETA_SCAN_STEP_DEG, THETA_SCAN_STEP_DEG
        )
        slope_mins.append((r, float(worst)))
        at_zero = max(at_zero, abs(float(d0)))

    y_tuple = tuple(float(v) for v in y_mins)
    theta_mins = tuple(slope_mins)
    return MonotonicityReport(
        r_max=r_max,
        r_step=r_step,
        theta_samples=tuple(float(t) for t in tvals),
        y_mins=y_tuple,
        y_pass=min(y_tuple) >= SLOPE_TOLERANCE,
        theta_slope_mins=theta_mins,
        theta_pass=all(m >= SLOPE_TOLERANCE for _, m in theta_mins),
        gap_slope_at_zero=at_zero,
    )
