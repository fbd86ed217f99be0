"""Road-graph routing with great-circle fallback.

A route snaps both endpoints to their nearest graph nodes and runs Dijkstra
over directed edge weights. When either snap is farther than SNAP_MAX_M or
no path exists, the route degrades to the straight great-circle segment, so
routing is total over valid coordinates.
"""

from __future__ import annotations

import heapq
import json
import math
from dataclasses import dataclass
from pathlib import Path

from .geo import GeoPoint, haversine_distance, make_point

SNAP_MAX_M = 500.0

# Planning speeds, meters per second.
SPEED_MPS = {"walking": 1.4, "driving": 8.33}

MODES = tuple(SPEED_MPS)

# Explicit weights may undercut the great-circle distance by this relative
# slack before being rejected, to tolerate rounding in hand-written fixtures.
_WEIGHT_SLACK = 1e-9


class RoutingError(Exception):
    pass


class CorruptGraph(RoutingError):
    """Graph file failed to parse or violates a structural invariant."""


class NoPath(RoutingError):
    def __init__(self, src: str, dst: str):
        super().__init__(f"no path from {src!r} to {dst!r}")


@dataclass(frozen=True)
class RoadGraph:
    nodes: dict[str, GeoPoint]
    # adjacency: node id -> tuple of (neighbor id, weight in meters)
    adjacency: dict[str, tuple[tuple[str, float], ...]]


@dataclass(frozen=True)
class RouteResult:
    polyline: tuple[GeoPoint, ...]
    distance_m: float
    duration_s: float
    mode: str
    kind: str  # "graph" or "straight_line"


def load_graph(path: str | Path) -> RoadGraph:
    """Load and validate a road graph file.

    Bidirectional edges expand to two directed edges; a missing weight
    defaults to the great-circle distance of the endpoints.
    """
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
        raw_nodes = doc.get("nodes", [])
        raw_edges = doc.get("edges", [])
        nodes = {}
        for raw in raw_nodes:
            node_id = str(raw["id"])
            if node_id in nodes:
                raise CorruptGraph(f"duplicate node id {node_id!r}")
            nodes[node_id] = make_point(raw["lat"], raw["lon"])
        adjacency: dict[str, list[tuple[str, float]]] = {n: [] for n in nodes}
        for raw in raw_edges:
            src, dst = str(raw["from"]), str(raw["to"])
            for end in (src, dst):
                if end not in nodes:
                    raise CorruptGraph(f"edge references missing node {end!r}")
            crow = haversine_distance(nodes[src], nodes[dst])
            weight = raw.get("weight_m")
            if weight is None:
                weight = crow
            else:
                weight = float(weight)
                if not math.isfinite(weight) or weight <= 0:
                    raise CorruptGraph(f"edge {src}->{dst}: bad weight {weight}")
                if weight < crow * (1.0 - _WEIGHT_SLACK):
                    raise CorruptGraph(
                        f"edge {src}->{dst}: weight {weight} below great-circle "
                        f"distance {crow:.1f}"
                    )
            adjacency[src].append((dst, weight))
            if raw.get("bidirectional", True):
                adjacency[dst].append((src, weight))
    except CorruptGraph:
        raise
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise CorruptGraph(f"{path}: {exc}") from exc
    return RoadGraph(
        nodes=nodes, adjacency={n: tuple(v) for n, v in adjacency.items()}
    )


def shortest_path(graph: RoadGraph, src: str, dst: str) -> tuple[list[str], float]:
    """Minimum-weight directed path from src to dst via Dijkstra.

    Among equal-weight paths the lexicographically smallest node-id sequence
    wins: the heap orders by (weight, path), so the first time dst is popped
    it carries both the minimum weight and the smallest path.
    Raises NoPath when dst is unreachable.
    """
    if src not in graph.nodes:
        raise RoutingError(f"unknown node {src!r}")
    if dst not in graph.nodes:
        raise RoutingError(f"unknown node {dst!r}")
    heap: list[tuple[float, tuple[str, ...]]] = [(0.0, (src,))]
    done: set[str] = set()
    while heap:
        dist, path = heapq.heappop(heap)
        node = path[-1]
        if node in done:
            continue
        done.add(node)
        if node == dst:
            return list(path), dist
        for neighbor, weight in graph.adjacency[node]:
            if neighbor not in done:
                heapq.heappush(heap, (dist + weight, path + (neighbor,)))
    raise NoPath(src, dst)


def nearest_node(graph: RoadGraph, p: GeoPoint) -> tuple[str | None, float]:
    """Closest graph node to p by great-circle distance; ties go to the
    smaller node id. (None, inf) on an empty graph."""
    best_id, best_d = None, math.inf
    for node_id in sorted(graph.nodes):
        d = haversine_distance(p, graph.nodes[node_id])
        if d < best_d:
            best_id, best_d = node_id, d
    return best_id, best_d


def estimate_duration(distance_m: float, mode: str) -> float:
    """Travel time in seconds at the mode's planning speed."""
    if mode not in SPEED_MPS:
        raise RoutingError(f"unknown mode {mode!r}")
    if distance_m < 0:
        raise RoutingError("distance must be >= 0")
    return distance_m / SPEED_MPS[mode]


def _straight_line(origin: GeoPoint, dest: GeoPoint, mode: str) -> RouteResult:
    d = haversine_distance(origin, dest)
    return RouteResult(
        polyline=(origin, dest),
        distance_m=d,
        duration_s=estimate_duration(d, mode),
        mode=mode,
        kind="straight_line",
    )


def route(
    graph: RoadGraph, origin: GeoPoint, dest: GeoPoint, mode: str = "walking"
) -> RouteResult:
    """Route from origin to dest, preferring the road graph.

    Total for valid inputs: whenever a snapped road route is unavailable or
    the snaps exceed SNAP_MAX_M, the great-circle segment is returned.
    """
    if mode not in SPEED_MPS:
        raise RoutingError(f"unknown mode {mode!r}")
    if origin == dest:
        return _straight_line(origin, dest, mode)
    src, snap_in = nearest_node(graph, origin)
    dst, snap_out = nearest_node(graph, dest)
    if src is None or snap_in > SNAP_MAX_M or snap_out > SNAP_MAX_M:
        return _straight_line(origin, dest, mode)
    try:
        node_path, path_weight = shortest_path(graph, src, dst)
    except NoPath:
        return _straight_line(origin, dest, mode)
    distance = snap_in + path_weight + snap_out
    polyline = (origin, *(graph.nodes[n] for n in node_path), dest)
    return RouteResult(
        polyline=polyline,
        distance_m=distance,
        duration_s=estimate_duration(distance, mode),
        mode=mode,
        kind="graph",
    )
