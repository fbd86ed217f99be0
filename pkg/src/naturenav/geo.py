"""Pure geodesy: validated coordinates, great-circle distance, bearing, boxes.

All angles cross module boundaries in decimal degrees; radians are an
internal detail. Distances are meters on a sphere of radius EARTH_RADIUS_M.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

# IUGG mean Earth radius, meters.
EARTH_RADIUS_M = 6371008.8

# Half the Earth's circumference: no two points are farther apart than this.
MAX_DISTANCE_M = math.pi * EARTH_RADIUS_M


class GeoError(ValueError):
    """Base class for coordinate and geometry errors."""


class NotFinite(GeoError):
    """A coordinate component was NaN or infinite."""


class OutOfRange(GeoError):
    """A coordinate component fell outside the valid lat/lon bounds."""


class DegenerateBearing(GeoError):
    """Bearing is undefined: coincident points or a pole endpoint."""


@dataclass(frozen=True)
class GeoPoint:
    """A validated WGS84-style coordinate pair, degrees, north/east positive.

    Longitude -180 is canonicalized to +180 so equality is well-defined.
    """

    lat: float
    lon: float

    def __post_init__(self):
        for name, v in (("lat", self.lat), ("lon", self.lon)):
            if not math.isfinite(v):
                raise NotFinite(f"{name} must be finite, got {v!r}")
        if not -90.0 <= self.lat <= 90.0:
            raise OutOfRange(f"lat {self.lat} outside [-90, 90]")
        if not -180.0 <= self.lon <= 180.0:
            raise OutOfRange(f"lon {self.lon} outside [-180, 180]")
        if self.lon == -180.0:
            object.__setattr__(self, "lon", 180.0)


@dataclass(frozen=True)
class BoundingBox:
    """Axis-aligned lat/lon box; may not cross the antimeridian."""

    min_lat: float
    max_lat: float
    min_lon: float
    max_lon: float

    def __post_init__(self):
        if self.min_lat > self.max_lat:
            raise OutOfRange(f"min_lat {self.min_lat} > max_lat {self.max_lat}")
        if self.min_lon > self.max_lon:
            raise OutOfRange(f"min_lon {self.min_lon} > max_lon {self.max_lon}")

    def contains(self, p: GeoPoint) -> bool:
        return (
            self.min_lat <= p.lat <= self.max_lat
            and self.min_lon <= p.lon <= self.max_lon
        )


def make_point(lat: float, lon: float) -> GeoPoint:
    """Validate and canonicalize a lat/lon pair.

    Raises NotFinite or OutOfRange on bad input.
    """
    return GeoPoint(float(lat), float(lon))


def haversine_distance(a: GeoPoint, b: GeoPoint) -> float:
    """Great-circle distance in meters between two points.

    Symmetric by construction (the formula depends only on squared
    half-angle differences) and zero iff the canonicalized points coincide.
    """
    phi1 = math.radians(a.lat)
    phi2 = math.radians(b.lat)
    dphi = math.radians(b.lat - a.lat)
    dlam = math.radians(b.lon - a.lon)
    h = (
        math.sin(dphi / 2.0) ** 2
        + math.cos(phi1) * math.cos(phi2) * math.sin(dlam / 2.0) ** 2
    )
    return 2.0 * EARTH_RADIUS_M * math.asin(min(1.0, math.sqrt(h)))


def initial_bearing(a: GeoPoint, b: GeoPoint) -> float:
    """Forward azimuth from a toward b, degrees clockwise from north, [0, 360).

    Raises DegenerateBearing when the points coincide or either is a pole.
    """
    if a == b:
        raise DegenerateBearing("bearing undefined for coincident points")
    if abs(a.lat) == 90.0 or abs(b.lat) == 90.0:
        raise DegenerateBearing("bearing undefined at a pole")
    phi1 = math.radians(a.lat)
    phi2 = math.radians(b.lat)
    dlam = math.radians(b.lon - a.lon)
    x = math.sin(dlam) * math.cos(phi2)
    y = math.cos(phi1) * math.sin(phi2) - math.sin(phi1) * math.cos(phi2) * math.cos(dlam)
    bearing = math.degrees(math.atan2(x, y)) % 360.0
    # A tiny negative azimuth can round to exactly 360.0 after the modulo.
    return 0.0 if bearing == 360.0 else bearing
