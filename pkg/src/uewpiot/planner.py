"""Coverage-aware UAV tour planning over a field of IoT nodes.

Builds on a simple geometric fact: a UAV hovering at height H with
powering range d_EH covers a ground disk of radius R = sqrt(d_EH^2 - H^2).
Nodes are grouped into disks anchored at node positions (greedy maximum
coverage), one node per group is the traversal point, and the UAV flies
a closed shortest tour over the traversal points.

Tour construction is nearest-neighbor followed by 2-opt improvement; an
exact dynamic-programming solver is available for up to 12 points.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import CapabilityError, ConfigurationError, InfeasibilityError

# Nodes this close beyond the disk edge still count as covered.
MEMBERSHIP_SLACK_M = 1e-9

EXACT_SOLVER_MAX_POINTS = 12
TWO_OPT_MAX_PASSES = 10_000


def coverage_radius_m(uav_height_m: float, eh_distance_m: float) -> float:
    """Ground coverage radius R = sqrt(d_EH^2 - H^2) at hover height H."""
    if uav_height_m < 0:
        raise ConfigurationError("hover height must be >= 0")
    if uav_height_m > eh_distance_m:
        raise InfeasibilityError(
            f"hover height {uav_height_m} m exceeds powering range {eh_distance_m} m"
        )
    return math.sqrt(eh_distance_m**2 - uav_height_m**2)


@dataclass(frozen=True)
class NodeField:
    """Node positions on a rectangular ground area."""

    width_m: float
    height_m: float
    positions: np.ndarray  # shape (n, 2)
    seed: int

    def __post_init__(self) -> None:
        pts = np.asarray(self.positions, dtype=float)
        if pts.ndim != 2 or pts.shape[1] != 2:
            raise ConfigurationError("positions must have shape (n, 2)")
        if pts.size and (
            pts[:, 0].min() < 0
            or pts[:, 1].min() < 0
            or pts[:, 0].max() > self.width_m
            or pts[:, 1].max() > self.height_m
        ):
            raise ConfigurationError("node positions must lie inside the field")
        pts.flags.writeable = False
        object.__setattr__(self, "positions", pts)

    @property
    def node_count(self) -> int:
        return len(self.positions)


def generate_nodes(
    width_m: float,
    height_m: float,
    density_per_cell: float,
    seed: int,
    count: int | None = None,
) -> NodeField:
    """Seeded uniform node placement.

    ``density_per_cell`` counts nodes per 10 m x 10 m cell, so 0.25 on a
    100 m x 100 m field yields 25 nodes. An explicit ``count`` overrides
    the density. Same seed, same field, bit for bit.
    """
    if width_m <= 0 or height_m <= 0:
        raise ConfigurationError("field area must be positive")
    if count is None:
        if density_per_cell <= 0:
            raise ConfigurationError("node density must be positive")
        count = round(density_per_cell * width_m * height_m / 100.0)
    if count < 1:
        raise ConfigurationError(f"field would contain {count} nodes; need at least 1")
    rng = np.random.default_rng(seed)
    positions = rng.uniform([0.0, 0.0], [width_m, height_m], size=(count, 2))
    return NodeField(width_m, height_m, positions, seed)


@dataclass(frozen=True)
class WpcGroup:
    """One hover stop: the traversal node and every node its disk covers."""

    traversal_index: int
    member_indices: frozenset[int]

    def __post_init__(self) -> None:
        if self.traversal_index not in self.member_indices:
            raise ConfigurationError("traversal point must belong to its own group")


def form_wpc_groups(node_field: NodeField, radius_m: float) -> list[WpcGroup]:
    """Greedy maximum-coverage grouping of the field's nodes.

    Repeatedly picks the uncovered node whose disk of ``radius_m`` covers
    the most still-uncovered nodes (ties broken by lowest node index),
    makes it a traversal point, and removes the covered nodes. The
    resulting groups partition the field.
    """
    if radius_m < 0:
        raise ConfigurationError("coverage radius must be >= 0")
    pts = node_field.positions
    n = len(pts)
    if n == 0:
        return []
    diff = pts[:, None, :] - pts[None, :, :]
    covered = (diff**2).sum(axis=-1) <= (radius_m + MEMBERSHIP_SLACK_M) ** 2

    uncovered = np.ones(n, dtype=bool)
    groups: list[WpcGroup] = []
    while uncovered.any():
        gains = (covered & uncovered[None, :]).sum(axis=1)
        gains[~uncovered] = -1  # only uncovered nodes may anchor a disk
        best = int(np.argmax(gains))  # argmax returns the lowest index on ties
        members = np.flatnonzero(covered[best] & uncovered)
        groups.append(WpcGroup(best, frozenset(int(i) for i in members)))
        uncovered[members] = False
    return groups


@dataclass(frozen=True)
class TourPlan:
    """An ordered visit sequence; ``closed`` adds the return leg.

    ``visit_order`` maps each stop back to the caller's point indices.
    """

    ordered_points: np.ndarray  # shape (k, 2)
    closed: bool
    length_m: float
    visit_order: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        pts = np.asarray(self.ordered_points, dtype=float)
        if pts.ndim != 2 or (pts.size and pts.shape[1] != 2):
            raise ConfigurationError("ordered_points must have shape (k, 2)")
        pts.flags.writeable = False
        object.__setattr__(self, "ordered_points", pts)
        if not self.visit_order:
            object.__setattr__(self, "visit_order", tuple(range(len(pts))))
        elif sorted(self.visit_order) != list(range(len(pts))):
            raise ConfigurationError("visit_order must be a permutation of the points")

    @property
    def point_count(self) -> int:
        return len(self.ordered_points)


def _path_length(points: np.ndarray, closed: bool) -> float:
    if len(points) < 2:
        return 0.0
    legs = np.linalg.norm(np.diff(points, axis=0), axis=1)
    total = float(legs.sum())
    if closed:
        total += float(np.linalg.norm(points[-1] - points[0]))
    return total


def tour_length_m(plan: TourPlan) -> float:
    """Euclidean length of the plan's legs, plus the return leg when closed."""
    return _path_length(plan.ordered_points, plan.closed)


def _nearest_neighbor_order(points: np.ndarray) -> list[int]:
    n = len(points)
    order = [0]
    remaining = list(range(1, n))
    while remaining:
        current = points[order[-1]]
        dists = np.linalg.norm(points[remaining] - current, axis=1)
        pick = int(np.argmin(dists))  # lowest index wins ties
        order.append(remaining.pop(pick))
    return order


def _two_opt(points: np.ndarray, order: list[int]) -> list[int]:
    """First-improvement 2-opt on a closed tour; position 0 stays fixed."""
    order = list(order)
    n = len(order)
    if n < 4:
        return order
    passes = 0
    improved = True
    while improved and passes < TWO_OPT_MAX_PASSES:
        improved = False
        passes += 1
        for i in range(1, n - 1):
            a = points[order[i - 1]]
            b = points[order[i]]
            for j in range(i + 1, n):
                c = points[order[j]]
                d = points[order[(j + 1) % n]]
                delta = (
                    math.hypot(c[0] - a[0], c[1] - a[1])
                    + math.hypot(d[0] - b[0], d[1] - b[1])
                    - math.hypot(b[0] - a[0], b[1] - a[1])
                    - math.hypot(d[0] - c[0], d[1] - c[1])
                )
                if delta < -1e-12:
                    order[i : j + 1] = reversed(order[i : j + 1])
                    improved = True
                    a = points[order[i - 1]]
                    b = points[order[i]]
    return order


def _held_karp_order(points: np.ndarray) -> list[int]:
    """Exact closed-tour order by dynamic programming, start fixed at 0."""
    n = len(points)
    if n <= 2:
        return list(range(n))
    dist = np.linalg.norm(points[:, None, :] - points[None, :, :], axis=-1)
    size = 1 << (n - 1)  # subsets of nodes 1..n-1
    cost = np.full((size, n - 1), math.inf)
    parent = np.full((size, n - 1), -1, dtype=int)
    for j in range(n - 1):
        cost[1 << j, j] = dist[0, j + 1]
    for mask in range(size):
        for j in range(n - 1):
            c = cost[mask, j]
            if not math.isfinite(c):
                continue
            for k in range(n - 1):
                if mask & (1 << k):
                    continue
                nmask = mask | (1 << k)
                nc = c + dist[j + 1, k + 1]
                if nc < cost[nmask, k]:
                    cost[nmask, k] = nc
                    parent[nmask, k] = j
    full = size - 1
    totals = cost[full] + dist[1:, 0]
    j = int(np.argmin(totals))
    order_rev = []
    mask = full
    while j >= 0:
        order_rev.append(j + 1)
        pj = parent[mask, j]
        mask ^= 1 << j
        j = pj
    return [0] + order_rev[::-1]


def plan_tour(points, mode: str = "heuristic") -> TourPlan:
    """Closed tour over the given points, starting from the first point.

    ``heuristic`` runs nearest-neighbor construction with 2-opt
    improvement; ``exact`` solves optimally by dynamic programming and is
    limited to 12 points.
    """
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    if len(pts) < 1:
        raise ConfigurationError("a tour needs at least one point")
    if mode == "exact":
        if len(pts) > EXACT_SOLVER_MAX_POINTS:
            raise CapabilityError(
                f"exact solver limited to {EXACT_SOLVER_MAX_POINTS} points, got {len(pts)}"
            )
        order = _held_karp_order(pts)
    elif mode == "heuristic":
        order = _two_opt(pts, _nearest_neighbor_order(pts))
    else:
        raise ConfigurationError(f"unknown tour mode {mode!r}")
    ordered = pts[order]
    return TourPlan(
        ordered,
        closed=True,
        length_m=_path_length(ordered, True),
        visit_order=tuple(order),
    )


@dataclass(frozen=True)
class StrategyResult:
    """Planning outcome for one trajectory strategy."""

    name: str
    height_m: float | None  # None for the one-by-one baseline
    radius_m: float
    groups: tuple[WpcGroup, ...]
    plan: TourPlan

    @property
    def group_count(self) -> int:
        return len(self.groups)

    @property
    def length_m(self) -> float:
        return self.plan.length_m


@dataclass(frozen=True)
class StrategyComparison:
    """Per-strategy tours over one node field at a common powering range."""

    eh_distance_m: float
    results: tuple[StrategyResult, ...]

    def by_name(self, name: str) -> StrategyResult:
        for result in self.results:
            if result.name == name:
                return result
        raise KeyError(name)

    def saving_fraction(self, name: str) -> float:
        """Relative length saving of a strategy vs the one-by-one baseline."""
        baseline = self.results[0].length_m
        return 1.0 - self.by_name(name).length_m / baseline


def compare_strategies(
    node_field: NodeField,
    eh_distance_m: float,
    heights_m: list[float],
    mode: str = "heuristic",
) -> StrategyComparison:
    """One-by-one baseline plus one grouped strategy per hover height.

    The baseline visits every node (coverage radius 0); each grouped
    strategy forms coverage groups at R(height) and tours the traversal
    points. All strategies use the same tour solver.
    """
    results = []
    baseline_groups = tuple(
        WpcGroup(i, frozenset({i})) for i in range(node_field.node_count)
    )
    results.append(
        StrategyResult(
            name="one-by-one",
            height_m=None,
            radius_m=0.0,
            groups=baseline_groups,
            plan=plan_tour(node_field.positions, mode=mode),
        )
    )
    for height in heights_m:
        radius = coverage_radius_m(height, eh_distance_m)
        groups = tuple(form_wpc_groups(node_field, radius))
        traversal_points = node_field.positions[[g.traversal_index for g in groups]]
        results.append(
            StrategyResult(
                name=f"H={height:g}",
                height_m=height,
                radius_m=radius,
                groups=groups,
                plan=plan_tour(traversal_points, mode=mode),
            )
        )
    return StrategyComparison(eh_distance_m=eh_distance_m, results=tuple(results))
