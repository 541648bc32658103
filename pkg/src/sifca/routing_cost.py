"""Optimal routing cost, computed two independent ways.

The first route is the closed-form track: five concatenation cases for
the moving-center layout, each splitting the six terminals into a
four-terminal tree and a three-terminal tree that share only the
source.  The case expressions are evaluated exactly as published,
including two suspected misprints (a sign flip that makes the third
variant of case four imaginary, and identical right-hand sides for two
variants of case five); the ``validate`` command reports where they
disagree with the oracle.

The second route is an exact tree oracle for up to six terminals: it
enumerates every full-tree shape (terminals of degree one, added hubs
of degree three), relaxes hub positions to the per-shape optimum, and
minimizes over every way of concatenating full trees at shared
terminals.  The oracle knows nothing about the pentagon, which is what
makes it a trustworthy referee for the closed forms.

Degenerate optima are first-class: a hub may collapse onto a neighbor,
giving zero-length edges.  The per-shape optimizer reports them as-is;
the oracle's assembled tree snaps coincident points together and drops
the empty edges.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _kernels
from .geometry import Point, distance
from .model import (
    CANONICAL_SECTOR_I_DEG,
    NodeClassIConfig,
    NodeClassIIConfig,
    terminals_class_ii,
)

# Below this separation two input points are too close for the hub
# relaxation to be well conditioned.
NEAR_DUPLICATE_LIMIT = 1e-9

DEFAULT_TOL = 1e-10
DEFAULT_MAX_PASSES = 100_000

SUBCASE_4_NAMES = {0: "nondegenerate", 1: "below-BE", 2: "above-BE"}
SUBCASE_5_NAMES = {0: "nondegenerate", 1: "left-of-AC", 2: "right-of-AC"}


class DuplicatePointError(ValueError):
    """Two input points coincide exactly."""


class NearDuplicatePointError(ValueError):
    """Two input points are distinct but closer than NEAR_DUPLICATE_LIMIT."""


class ConvergenceError(RuntimeError):
    """The hub relaxation did not converge within its iteration cap."""


class NonCanonicalAngleError(ValueError):
    """Closed forms are only defined on the canonical sector [0, 36]."""


@dataclass(frozen=True)
class FullTopology:
    """One tree shape over ``terminal_count`` terminals.

    Slots 0..k-1 are terminals (degree one); slots k..2k-3 are movable
    hubs (degree three).  ``edges`` is the slot adjacency; for k = 2 it
    is the single terminal-terminal edge.
    """

    terminal_count: int
    edges: tuple[tuple[int, int], ...]

    @property
    def steiner_count(self) -> int:
        return max(0, self.terminal_count - 2)

    def steiner_neighbors(self) -> np.ndarray:
        """Per-hub neighbor triples as a (steiner_count, 3) array."""
        k = self.terminal_count
        nbrs: list[list[int]] = [[] for _ in range(self.steiner_count)]
        for a, b in self.edges:
            if a >= k:
                nbrs[a - k].append(b)
            if b >= k:
                nbrs[b - k].append(a)
        return np.asarray(nbrs, dtype=np.int64).reshape(self.steiner_count, 3)


@dataclass(frozen=True)
class SteinerTree:
    """A tree over fixed terminals plus optimized hub points.

    Edge entries are (i, j, length) with indices into the concatenation
    of ``terminals`` and ``steiner_points``.  ``total_cost`` always
    equals the sum of the edge lengths.
    """

    terminals: tuple[Point, ...]
    steiner_points: tuple[Point, ...]
    edges: tuple[tuple[int, int, float], ...]
    total_cost: float

    def point(self, index: int) -> Point:
        n = len(self.terminals)
        if index < n:
            return self.terminals[index]
        return self.steiner_points[index - n]


@dataclass(frozen=True)
class CaseCostsClassI:
    """The five published case values at one configuration.

    ``values`` follows case order 1..5; cases four and five carry the
    published expression for the geometric regime named by their
    subcase tag.  In the above-BE regime the published case-four
    expression has a negative radicand and evaluates to NaN; NaN never
    wins the minimum.
    """

    values: tuple[float, float, float, float, float]
    subcase_4: str
    subcase_5: str
    minimum: float
    argmin_case: int


@dataclass(frozen=True)
class ConcatenationPlan:
    """A way to split the terminal set into full trees glued at shared
    terminals.  Parts are label tuples; every pair of parts overlaps in
    at most one label and the parts chain into a single tree."""

    parts: tuple[tuple[object, ...], ...]

    def shared_labels(self) -> tuple[object, ...]:
        seen: dict[object, int] = {}
        for part in self.parts:
            for label in part:
                seen[label] = seen.get(label, 0) + 1
        return tuple(label for label, count in seen.items() if count > 1)


@lru_cache(maxsize=None)
def enumerate_full_topologies(k: int) -> tuple[FullTopology, ...]:
    """Every full-tree shape on k labeled terminals.

    Built by edge splitting: insert terminal t into each edge of each
    smaller shape through a fresh hub.  Yields (2k-4)!/((k-2)! 2^(k-2))
    shapes for k >= 3 and the single direct edge for k = 2, with no
    relabeled duplicates.
    """
    if k < 2 or k > 6:
        raise ValueError(f"terminal count must be in [2, 6], got {k}")
    if k == 2:
        return (FullTopology(2, ((0, 1),)),)
    shapes: list[tuple[tuple[int, int], ...]] = [((0, 1),)]
    for t in range(2, k):
        hub = k + (t - 2)
        grown: list[tuple[tuple[int, int], ...]] = []
        for edges in shapes:
            for split in edges:
                a, b = split
                kept = tuple(e for e in edges if e != split)
                grown.append(
                    tuple(
                        sorted(
                            kept
                            + (
                                tuple(sorted((a, hub))),
                                tuple(sorted((b, hub))),
                                tuple(sorted((t, hub))),
                            )
                        )
                    )
                )
        shapes = grown
    return tuple(FullTopology(k, edges) for edges in shapes)


@lru_cache(maxsize=None)
def _index_plans(n: int) -> tuple[tuple[int, ...], ...]:
    """All concatenation plans over terminal indices 0..n-1, as tuples
    of member bitmasks in ascending order.

    A plan is a forest-of-parts: each new part must touch its members
    in pairwise distinct connected components, and the part sizes spend
    exactly n-1 merges, which forces full coverage and connectivity.
    """
    masks = [m for m in range(3, 1 << n) if bin(m).count("1") >= 2]
    members = {m: tuple(i for i in range(n) if m >> i & 1) for m in masks}
    plans: list[tuple[int, ...]] = []

    def find(parent: list[int], i: int) -> int:
        while parent[i] != i:
            i = parent[i]
        return i

    def extend(start: int, chosen: tuple[int, ...], parent: list[int], budget: int) -> None:
        if budget == 0:
            plans.append(chosen)
            return
        for idx in range(start, len(masks)):
            mask = masks[idx]
            mem = members[mask]
            if len(mem) - 1 > budget:
                continue
            roots = [find(parent, i) for i in mem]
            if len(set(roots)) < len(mem):
                continue
            merged = parent.copy()
            for root in roots[1:]:
                merged[root] = roots[0]
            extend(idx + 1, chosen + (mask,), merged, budget - (len(mem) - 1))

    extend(0, (), list(range(n)), n - 1)
    return tuple(plans)


def enumerate_concatenations(labels) -> tuple[ConcatenationPlan, ...]:
    """Every way to split ``labels`` into full trees glued at shared
    terminals, including the one-part plan with all labels.

    Accepts 2 to 6 distinct hashable labels; parts and plans come back
    in a deterministic order derived from label positions.
    """
    labels = tuple(labels)
    if not 2 <= len(labels) <= 6:
        raise ValueError(f"label count must be in [2, 6], got {len(labels)}")
    if len(set(labels)) != len(labels):
        raise ValueError("labels must be distinct")
    n = len(labels)
    plans = []
    for plan in _index_plans(n):
        parts = tuple(
            tuple(labels[i] for i in range(n) if mask >> i & 1) for mask in plan
        )
        plans.append(ConcatenationPlan(parts))
    return tuple(plans)


@lru_cache(maxsize=None)
def _oracle_tables(n: int):
    """Kernel-ready tables for n terminals: subset members and sizes,
    plans as padded subset-index rows, and hub neighbor tables for
    every full-tree shape of four, five and six terminals."""
    masks = [m for m in range(3, 1 << n) if bin(m).count("1") >= 2]
    index_of = {m: i for i, m in enumerate(masks)}
    sub_members = np.full((len(masks), n), -1, dtype=np.int64)
    sub_size = np.zeros(len(masks), dtype=np.int64)
    for i, m in enumerate(masks):
        mem = [j for j in range(n) if m >> j & 1]
        sub_size[i] = len(mem)
        sub_members[i, : len(mem)] = mem
    plans = _index_plans(n)
    width = max(len(p) for p in plans)
    plan_rows = np.full((len(plans), width), -1, dtype=np.int64)
    for i, plan in enumerate(plans):
        for j, mask in enumerate(plan):
            plan_rows[i, j] = index_of[mask]

    def shape_table(k: int) -> np.ndarray:
        if k > n:
            return np.empty((0, 0, 3), dtype=np.int64)
        topos = enumerate_full_topologies(k)
        table = np.empty((len(topos), k - 2, 3), dtype=np.int64)
        for i, topo in enumerate(topos):
            table[i] = topo.steiner_neighbors()
        return table

    return sub_members, sub_size, plan_rows, shape_table(4), shape_table(5), shape_table(6)


def _as_coords(points) -> np.ndarray:
    rows = []
    for p in points:
        x, y = p
        rows.append((float(x), float(y)))
    return np.asarray(rows, dtype=np.float64)


def _check_separation(pts: np.ndarray) -> None:
    n = pts.shape[0]
    for i in range(n):
        for j in range(i + 1, n):
            d = math.hypot(pts[i, 0] - pts[j, 0], pts[i, 1] - pts[j, 1])
            if d == 0.0:
                raise DuplicatePointError(f"points {i} and {j} coincide")
            if d < NEAR_DUPLICATE_LIMIT:
                raise NearDuplicatePointError(
                    f"points {i} and {j} are only {d:.3e} apart"
                )


def optimize_fst(
    terminals,
    topology: FullTopology,
    tol: float = DEFAULT_TOL,
    max_passes: int = DEFAULT_MAX_PASSES,
) -> SteinerTree:
    """Optimal hub placement for one fixed tree shape.

    Repeatedly moves each hub to the relay point of its three neighbors
    until the largest per-pass displacement drops below ``tol``.  The
    objective is convex in the hub coordinates, so this is the global
    optimum for the shape.  Hubs collapsing onto neighbors are allowed
    and show up as zero-length edges, which are kept as-is here.
    """
    pts = _as_coords(terminals)
    k = topology.terminal_count
    if pts.shape[0] != k:
        raise ValueError(
            f"topology expects {k} terminals, got {pts.shape[0]}"
        )
    if tol <= 0.0:
        raise ValueError(f"tol must be positive, got {tol}")
    nst = topology.steiner_count
    work = np.empty((k + nst, 2), dtype=np.float64)
    work[:k] = pts
    work[k:] = pts.mean(axis=0)
    if nst:
        passes = _kernels._relax(
            work, k, nst, topology.steiner_neighbors(), tol, max_passes
        )
        if passes < 0:
            raise ConvergenceError(
                f"hub relaxation still moving after {max_passes} passes"
            )
    edges = []
    for a, b in topology.edges:
        length = math.hypot(work[a, 0] - work[b, 0], work[a, 1] - work[b, 1])
        edges.append((a, b, length))
    return SteinerTree(
        terminals=tuple(Point(x, y) for x, y in pts),
        steiner_points=tuple(Point(x, y) for x, y in work[k:]),
        edges=tuple(edges),
        total_cost=math.fsum(e[2] for e in edges),
    )


def _best_part_tree(pts: np.ndarray, tol: float, max_passes: int):
    """Cheapest full tree over all shapes for one part.

    Returns (cost, hub coordinate list, edge slot pairs).  Mirrors the
    scalar kernel's scan order (first strict improvement wins) so the
    assembled tree matches the kernel's cost selection exactly.
    """
    k = pts.shape[0]
    if k == 2:
        return (
            math.hypot(pts[0, 0] - pts[1, 0], pts[0, 1] - pts[1, 1]),
            [],
            [(0, 1)],
        )
    if k == 3:
        fx, fy, total = _kernels._fermat_xy(
            pts[0, 0], pts[0, 1], pts[1, 0], pts[1, 1], pts[2, 0], pts[2, 1]
        )
        return total, [(fx, fy)], [(0, 3), (1, 3), (2, 3)]
    best = math.inf
    best_hubs: list[tuple[float, float]] = []
    best_edges: list[tuple[int, int]] = []
    work = np.empty((2 * k - 2, 2), dtype=np.float64)
    centroid = pts.mean(axis=0)
    for topo in enumerate_full_topologies(k):
        work[:k] = pts
        work[k:] = centroid
        _kernels._relax(work, k, k - 2, topo.steiner_neighbors(), tol, max_passes)
        cost = _kernels._topology_cost(work, k, k - 2, topo.steiner_neighbors())
        if cost < best:
            best = cost
            best_hubs = [(x, y) for x, y in work[k:]]
            best_edges = list(topo.edges)
    return best, best_hubs, best_edges


def esmt_oracle(
    points,
    tol: float = DEFAULT_TOL,
    max_passes: int = DEFAULT_MAX_PASSES,
) -> SteinerTree:
    """Exact minimal tree over 2..6 distinct points.

    Minimizes, over every concatenation plan, the sum over parts of the
    per-part full-tree optimum; assembles the winning parts into one
    tree.  Hubs landing within 1e-9 of another point are snapped onto
    it and the resulting empty edges dropped, so degenerate optima come
    back as plain vertex-to-vertex edges.
    """
    pts = _as_coords(points)
    n = pts.shape[0]
    if not 2 <= n <= 6:
        raise ValueError(f"point count must be in [2, 6], got {n}")
    _check_separation(pts)
    tables = _oracle_tables(n)
    cost, plan_idx = _kernels.oracle_best_plan(
        pts, *tables[:3], *tables[3:], tol, max_passes
    )
    plan = _index_plans(n)[plan_idx]

    coords: list[tuple[float, float]] = [(x, y) for x, y in pts]

    def place(xy: tuple[float, float]) -> int:
        for i, (x, y) in enumerate(coords):
            if math.hypot(x - xy[0], y - xy[1]) < NEAR_DUPLICATE_LIMIT:
                return i
        coords.append(xy)
        return len(coords) - 1

    edges: list[tuple[int, int, float]] = []
    for mask in plan:
        members = [i for i in range(n) if mask >> i & 1]
        k = len(members)
        _, hubs, slot_edges = _best_part_tree(pts[members], tol, max_passes)
        slot_to_global = {i: members[i] for i in range(k)}
        for h, xy in enumerate(hubs):
            slot_to_global[k + h] = place(xy)
        for a, b in slot_edges:
            ga = slot_to_global[a]
            gb = slot_to_global[b]
            if ga == gb:
                continue
            length = distance(coords[ga], coords[gb])
            edges.append((ga, gb, length))
    return SteinerTree(
        terminals=tuple(Point(x, y) for x, y in pts),
        steiner_points=tuple(Point(x, y) for x, y in coords[n:]),
        edges=tuple(edges),
        total_cost=math.fsum(e[2] for e in edges),
    )


def esmt_cost(
    points,
    tol: float = DEFAULT_TOL,
    max_passes: int = DEFAULT_MAX_PASSES,
) -> float:
    """Minimal tree cost without assembling the tree.

    Same validation and the same kernel arithmetic as esmt_oracle, so
    sweeps and single-point queries agree to the last bit; only the
    tree assembly (and its point snapping) is skipped.
    """
    pts = _as_coords(points)
    n = pts.shape[0]
    if not 2 <= n <= 6:
        raise ValueError(f"point count must be in [2, 6], got {n}")
    _check_separation(pts)
    tables = _oracle_tables(n)
    return float(
        _kernels.oracle_cost(pts, *tables[:3], *tables[3:], tol, max_passes)
    )


def esmt_class_ii(
    cfg: NodeClassIIConfig,
    tol: float = DEFAULT_TOL,
    max_passes: int = DEFAULT_MAX_PASSES,
) -> float:
    """Optimal routing cost with one pentagon vertex moved to (r, alpha).

    The moved vertex must stay clear of the other terminals; a vertex
    sitting exactly on the source (r = 0) raises the duplicate-point
    error from the oracle.
    """
    terminals = terminals_class_ii(cfg)
    return esmt_oracle(terminals.coords(), tol, max_passes).total_cost


def mst(points) -> float:
    """Minimum spanning tree length under Euclidean distances.

    The oracle's upper bound: a minimal tree never costs more than the
    best spanning tree on the terminals alone.
    """
    pts = _as_coords(points)
    n = pts.shape[0]
    if n < 2:
        raise ValueError(f"need at least 2 points, got {n}")
    in_tree = [False] * n
    dist = [math.inf] * n
    dist[0] = 0.0
    total = 0.0
    for _ in range(n):
        best = -1
        for i in range(n):
            if not in_tree[i] and (best < 0 or dist[i] < dist[best]):
                best = i
        in_tree[best] = True
        total += dist[best]
        for i in range(n):
            if not in_tree[i]:
                d = math.hypot(pts[i, 0] - pts[best, 0], pts[i, 1] - pts[best, 1])
                if d < dist[i]:
                    dist[i] = d
    return total


def closed_form_class_i(cfg: NodeClassIConfig) -> CaseCostsClassI:
    """The five published routing cases at a canonical configuration.

    Requires theta in the canonical sector [0, 36]; fold with
    canonicalize_class_i first for other angles.  Values are the
    published expressions with cases four and five picking the variant
    their subcase label names; the minimum skips non-finite values.
    """
    theta = cfg.theta_deg
    if not 0.0 <= theta <= CANONICAL_SECTOR_I_DEG:
        raise NonCanonicalAngleError(
            f"theta must lie in [0, {CANONICAL_SECTOR_I_DEG}], got {theta}"
        )
    v1, v2, v3, v4, v5, sub4, sub5 = _kernels.selected_cases_class_i(cfg.r, theta)
    values = (float(v1), float(v2), float(v3), float(v4), float(v5))
    minimum = math.inf
    argmin = 0
    for i, v in enumerate(values):
        if v < minimum:
            minimum = v
            argmin = i + 1
    return CaseCostsClassI(
        values=values,
        subcase_4=SUBCASE_4_NAMES[int(sub4)],
        subcase_5=SUBCASE_5_NAMES[int(sub5)],
        minimum=minimum,
        argmin_case=argmin,
    )


def published_case_values(cfg: NodeClassIConfig) -> dict[str, float]:
    """All nine published case expressions, keyed by their labels.

    Includes every variant of cases four and five regardless of the
    geometric regime, for side-by-side comparison against the oracle;
    the above-BE variant of case four is NaN wherever its radicand goes
    negative.
    """
    theta = cfg.theta_deg
    if not 0.0 <= theta <= CANONICAL_SECTOR_I_DEG:
        raise NonCanonicalAngleError(
            f"theta must lie in [0, {CANONICAL_SECTOR_I_DEG}], got {theta}"
        )
    p = _kernels.printed_cases_class_i(cfg.r, theta)
    keys = (
        "case1",
        "case2",
        "case3",
        "case4-nondegenerate",
        "case4-below-BE",
        "case4-above-BE",
        "case5-nondegenerate",
        "case5-right-of-AC",
        "case5-left-of-AC",
    )
    return {k: float(v) for k, v in zip(keys, p)}
