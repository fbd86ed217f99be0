"""Persistent POI catalog: CRUD, seed loading, and index snapshot publication.

Persistence is a single JSON document replaced atomically on every mutation
(temp file in the same directory, then rename), so a crash leaves either the
old or the new complete file. Mutations are serialized through one lock;
readers get immutable snapshots and never see a half-applied change.
"""

from __future__ import annotations

import json
import os
import tempfile
import threading
import uuid
from dataclasses import dataclass, replace
from datetime import datetime, timezone
from pathlib import Path

from . import spatial
from .geo import GeoError, GeoPoint, make_point

CATEGORIES = ("nature",)

NAME_MAX = 200
DESCRIPTION_MAX = 5000

# Deterministic ids for seed entries, derived from the destination name, so a
# fresh seed always produces the same catalog.
_SEED_NAMESPACE = uuid.uuid5(uuid.NAMESPACE_DNS, "naturenav.seed")


class StoreError(Exception):
    pass


class CorruptStore(StoreError):
    """The persisted file failed to parse or violates a catalog invariant."""


class NotFound(StoreError):
    def __init__(self, poi_id: str):
        super().__init__(f"no poi with id {poi_id!r}")
        self.poi_id = poi_id


class AlreadySeeded(StoreError):
    pass


class ValidationError(StoreError):
    """A field-level input error; `field` names the offending field."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


@dataclass(frozen=True)
class Poi:
    id: str
    name: str
    description: str
    category: str
    location: GeoPoint
    created_at: datetime
    updated_at: datetime

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "name": self.name,
            "description": self.description,
            "category": self.category,
            "lat": self.location.lat,
            "lon": self.location.lon,
            "created_at": _format_ts(self.created_at),
            "updated_at": _format_ts(self.updated_at),
        }


@dataclass(frozen=True)
class Catalog:
    """Immutable snapshot of the whole store plus its spatial index."""

    pois: dict[str, Poi]
    revision: int
    index: spatial.SpatialIndex

    def list(self, category: str | None = None) -> list[Poi]:
        items = [
            p for p in self.pois.values() if category is None or p.category == category
        ]
        items.sort(key=lambda p: (p.name.encode("utf-8"), p.id))
        return items

    def get(self, poi_id: str) -> Poi:
        try:
            return self.pois[poi_id]
        except KeyError:
            raise NotFound(poi_id) from None


def _format_ts(ts: datetime) -> str:
    return ts.astimezone(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


def _parse_ts(raw: str) -> datetime:
    ts = datetime.strptime(raw, "%Y-%m-%dT%H:%M:%SZ")
    return ts.replace(tzinfo=timezone.utc)


def _utc_now() -> datetime:
    return datetime.now(timezone.utc).replace(microsecond=0)


def _validate_name(name) -> str:
    if not isinstance(name, str) or not name.strip():
        raise ValidationError("name", "must be non-empty")
    name = name.strip()
    if len(name) > NAME_MAX:
        raise ValidationError("name", f"longer than {NAME_MAX} characters")
    return name


def _validate_description(description) -> str:
    if not isinstance(description, str):
        raise ValidationError("description", "must be a string")
    if len(description) > DESCRIPTION_MAX:
        raise ValidationError("description", f"longer than {DESCRIPTION_MAX} characters")
    return description


def _validate_category(category) -> str:
    if category not in CATEGORIES:
        raise ValidationError("category", f"must be one of {', '.join(CATEGORIES)}")
    return category


def _validate_location(lat, lon) -> GeoPoint:
    try:
        return make_point(lat, lon)
    except (GeoError, TypeError) as exc:
        raise ValidationError("location", str(exc)) from None


def _poi_from_json(raw: dict) -> Poi:
    poi = Poi(
        id=str(raw["id"]),
        name=_validate_name(raw["name"]),
        description=_validate_description(raw.get("description", "")),
        category=_validate_category(raw.get("category", "nature")),
        location=_validate_location(raw["lat"], raw["lon"]),
        created_at=_parse_ts(raw["created_at"]),
        updated_at=_parse_ts(raw["updated_at"]),
    )
    if poi.updated_at < poi.created_at:
        raise CorruptStore(f"poi {poi.id}: updated_at before created_at")
    return poi


def _snapshot(pois: dict[str, Poi], revision: int) -> Catalog:
    index = spatial.build([(p.id, p.location) for p in pois.values()])
    return Catalog(pois=dict(pois), revision=revision, index=index)


def load(path: str | Path) -> Catalog:
    """Load a catalog from disk; a missing file is an empty catalog.

    Raises CorruptStore on any parse failure or invariant violation; never
    silently drops records.
    """
    path = Path(path)
    if not path.exists():
        return _snapshot({}, 0)
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
        revision = int(doc["revision"])
        pois = {}
        for raw in doc["pois"]:
            poi = _poi_from_json(raw)
            if poi.id in pois:
                raise CorruptStore(f"duplicate poi id {poi.id}")
            pois[poi.id] = poi
    except CorruptStore:
        raise
    except (ValueError, KeyError, TypeError, StoreError) as exc:
        raise CorruptStore(f"{path}: {exc}") from exc
    return _snapshot(pois, revision)


def persist(catalog: Catalog, path: str | Path) -> None:
    """Atomically replace the store file with this catalog's contents."""
    path = Path(path)
    doc = {
        "revision": catalog.revision,
        "pois": [p.to_json() for p in catalog.list()],
    }
    data = json.dumps(doc, ensure_ascii=False, indent=2)
    fd, tmp = tempfile.mkstemp(prefix=".pois-", suffix=".tmp", dir=path.parent)
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as f:
            f.write(data)
            f.flush()
            os.fsync(f.fileno())
        os.replace(tmp, path)
    except OSError:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


class PoiStore:
    """Single-writer store over one pois.json file.

    Mutations take the write lock, persist the new catalog, then publish it;
    `snapshot()` is lock-free for readers in the sense that it only swaps a
    reference.
    """

    def __init__(self, path: str | Path, now=_utc_now):
        self._path = Path(path)
        self._now = now
        self._lock = threading.Lock()
        self._catalog = load(self._path)

    def snapshot(self) -> Catalog:
        return self._catalog

    def _commit(self, pois: dict[str, Poi]) -> Catalog:
        catalog = _snapshot(pois, self._catalog.revision + 1)
        persist(catalog, self._path)
        self._catalog = catalog
        return catalog

    def create(self, name, description, category, lat, lon) -> Poi:
        poi_fields = {
            "name": _validate_name(name),
            "description": _validate_description(description),
            "category": _validate_category(category),
            "location": _validate_location(lat, lon),
        }
        with self._lock:
            now = self._now()
            poi = Poi(
                id=str(uuid.uuid4()), created_at=now, updated_at=now, **poi_fields
            )
            pois = dict(self._catalog.pois)
            pois[poi.id] = poi
            self._commit(pois)
            return poi

    def update(
        self, poi_id, *, name=None, description=None, category=None, lat=None, lon=None
    ) -> Poi:
        with self._lock:
            poi = self._catalog.get(poi_id)
            if name is not None:
                poi = replace(poi, name=_validate_name(name))
            if description is not None:
                poi = replace(poi, description=_validate_description(description))
            if category is not None:
                poi = replace(poi, category=_validate_category(category))
            if lat is not None or lon is not None:
                new_lat = lat if lat is not None else poi.location.lat
                new_lon = lon if lon is not None else poi.location.lon
                poi = replace(poi, location=_validate_location(new_lat, new_lon))
            poi = replace(poi, updated_at=max(self._now(), poi.created_at))
            pois = dict(self._catalog.pois)
            pois[poi.id] = poi
            self._commit(pois)
            return poi

    def delete(self, poi_id) -> None:
        with self._lock:
            self._catalog.get(poi_id)
            pois = dict(self._catalog.pois)
            del pois[poi_id]
            self._commit(pois)

    def seed(self, fixture_path: str | Path) -> None:
        """Populate an empty catalog from a seed fixture file.

        Fixture entries carry no id/timestamps; ids are derived from the
        name so repeated fresh seeds are identical. Seeding a non-empty
        catalog raises AlreadySeeded to keep restarts idempotent.
        """
        with self._lock:
            if self._catalog.pois:
                raise AlreadySeeded("catalog is not empty")
            try:
                doc = json.loads(Path(fixture_path).read_text(encoding="utf-8"))
                entries = doc["pois"]
            except (OSError, ValueError, KeyError) as exc:
                raise CorruptStore(f"{fixture_path}: {exc}") from exc
            now = self._now()
            pois: dict[str, Poi] = {}
            for raw in entries:
                try:
                    poi = Poi(
                        id=str(uuid.uuid5(_SEED_NAMESPACE, raw["name"])),
                        name=_validate_name(raw["name"]),
                        description=_validate_description(raw.get("description", "")),
                        category=_validate_category(raw.get("category", "nature")),
                        location=_validate_location(raw["lat"], raw["lon"]),
                        created_at=now,
                        updated_at=now,
                    )
                except (KeyError, TypeError, StoreError) as exc:
                    raise CorruptStore(f"{fixture_path}: {exc}") from exc
                if poi.id in pois:
                    raise CorruptStore(f"{fixture_path}: duplicate name {poi.name!r}")
                pois[poi.id] = poi
            self._commit(pois)
