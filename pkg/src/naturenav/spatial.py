"""Immutable grid index over POI locations for k-nearest and radius queries.

The index buckets entries into 0.01-degree latitude bands. Correctness
contract: every query returns exactly what a brute-force scan over the
entries would, ordered by (distance, id). The banding only prunes work; it
never changes answers.

Band pruning relies on the one universally true bound: the great-circle
distance between two points is at least the arc spanned by their latitude
difference. A per-longitude bound would break near the poles and across the
antimeridian, so bands are scanned whole.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .geo import GeoPoint, haversine_distance

CELL_DEG = 0.01


class DuplicateId(ValueError):
    """Two index entries share the same poi id."""


@dataclass(frozen=True)
class SpatialIndex:
    entries: tuple[tuple[str, GeoPoint], ...]
    _bands: dict[int, tuple[tuple[str, GeoPoint], ...]] = field(repr=False)


def build(entries: list[tuple[str, GeoPoint]]) -> SpatialIndex:
    """Build an index over (id, location) pairs. Raises DuplicateId."""
    seen = set()
    bands: dict[int, list[tuple[str, GeoPoint]]] = {}
    for poi_id, loc in entries:
        if poi_id in seen:
            raise DuplicateId(f"duplicate poi id {poi_id!r}")
        seen.add(poi_id)
        bands.setdefault(math.floor(loc.lat / CELL_DEG), []).append((poi_id, loc))
    return SpatialIndex(
        entries=tuple(sorted(entries, key=lambda e: e[0])),
        _bands={k: tuple(v) for k, v in bands.items()},
    )


def _bands_by_gap(index: SpatialIndex, origin: GeoPoint):
    """Bands with a lower bound (meters) on distance to any entry inside,
    ascending by that bound.

    The bound is the latitude arc to the band's nearest edge, computed with
    the same haversine pipeline as real distances and shrunk by a small
    margin, so a band is only pruned when every computed member distance
    must exceed the caller's threshold (including underflow corner cases).
    """
    out = []
    for band, members in index._bands.items():
        lo, hi = band * CELL_DEG, (band + 1) * CELL_DEG
        if lo <= origin.lat <= hi:
            bound = 0.0
        else:
            edge = lo if origin.lat < lo else hi
            edge = min(90.0, max(-90.0, edge))
            arc = haversine_distance(origin, GeoPoint(edge, origin.lon))
            bound = max(0.0, arc * (1.0 - 1e-12) - 1e-9)
        out.append((bound, members))
    out.sort(key=lambda t: t[0])
    return out


def k_nearest(index: SpatialIndex, origin: GeoPoint, k: int) -> list[tuple[str, float]]:
    """The min(k, n) entries nearest to origin, ascending (distance, id)."""
    if k < 0:
        raise ValueError("k must be >= 0")
    if k == 0 or not index.entries:
        return []
    best: list[tuple[float, str]] = []
    for bound, members in _bands_by_gap(index, origin):
        if len(best) >= k and best[k - 1][0] < bound:
            break
        best.extend((haversine_distance(origin, loc), pid) for pid, loc in members)
        best.sort()
    return [(pid, d) for d, pid in best[:k]]


def within_radius(
    index: SpatialIndex, origin: GeoPoint, radius_m: float
) -> list[tuple[str, float]]:
    """All entries within radius_m of origin, ascending (distance, id)."""
    if radius_m < 0:
        raise ValueError("radius must be >= 0")
    hits: list[tuple[float, str]] = []
    for bound, members in _bands_by_gap(index, origin):
        if radius_m < bound:
            break
        for pid, loc in members:
            d = haversine_distance(origin, loc)
            if d <= radius_m:
                hits.append((d, pid))
    hits.sort()
    return [(pid, d) for d, pid in hits]
