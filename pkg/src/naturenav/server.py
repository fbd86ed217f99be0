"""HTTP/JSON API binding the catalog, spatial index and router together.

All endpoints live under /api/v1. Every non-2xx response carries exactly one
error envelope: {"error": {"code": ..., "message": ...}} with codes
NOT_FOUND (404), VALIDATION (422), UNAUTHORIZED (401), INTERNAL (500).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from . import routing, spatial, store
from .auth import SessionManager, UserStore
from .geo import GeoError, make_point
from .routing import RoadGraph, RouteResult
from .store import NotFound, PoiStore, ValidationError

DEFAULT_NEAR_K = 10

_COORD_RE = re.compile(r"^\s*(-?\d+(?:\.\d+)?)\s*,\s*(-?\d+(?:\.\d+)?)\s*$")


class ApiError(Exception):
    STATUS = {
        "NOT_FOUND": 404,
        "VALIDATION": 422,
        "UNAUTHORIZED": 401,
        "INTERNAL": 500,
    }

    def __init__(self, code: str, message: str):
        self.code = code
        self.message = message
        self.status = self.STATUS[code]


def _error_response(code: str, message: str) -> JSONResponse:
    return JSONResponse(
        status_code=ApiError.STATUS[code],
        content={"error": {"code": code, "message": message}},
    )


def parse_coord(raw: str, param: str):
    """Parse a 'lat,lon' query value into a GeoPoint."""
    m = _COORD_RE.match(raw or "")
    if not m:
        raise ApiError("VALIDATION", f"{param} must be 'lat,lon'")
    try:
        return make_point(float(m.group(1)), float(m.group(2)))
    except GeoError as exc:
        raise ApiError("VALIDATION", f"{param}: {exc}") from None


def route_to_json(result: RouteResult) -> dict:
    return {
        "polyline": [{"lat": p.lat, "lon": p.lon} for p in result.polyline],
        "distance_m": result.distance_m,
        "duration_s": result.duration_s,
        "mode": result.mode,
        "kind": result.kind,
    }


@dataclass
class AppState:
    poi_store: PoiStore
    graph: RoadGraph
    users: UserStore
    sessions: SessionManager


def create_app(
    poi_store: PoiStore,
    graph: RoadGraph,
    users: UserStore,
    sessions: SessionManager | None = None,
    allowed_origin: str | None = None,
) -> FastAPI:
    app = FastAPI(openapi_url=None, docs_url=None, redoc_url=None)
    state = AppState(poi_store, graph, users, sessions or SessionManager())
    app.state.lbs = state

    if allowed_origin:
        app.add_middleware(
            CORSMiddleware,
            allow_origins=[allowed_origin],
            allow_methods=["*"],
            allow_headers=["*"],
        )

    @app.exception_handler(ApiError)
    async def api_error(request: Request, exc: ApiError):
        return _error_response(exc.code, exc.message)

    @app.exception_handler(NotFound)
    async def not_found(request: Request, exc: NotFound):
        return _error_response("NOT_FOUND", str(exc))

    @app.exception_handler(ValidationError)
    async def validation(request: Request, exc: ValidationError):
        return _error_response("VALIDATION", str(exc))

    @app.exception_handler(RequestValidationError)
    async def body_validation(request: Request, exc: RequestValidationError):
        return _error_response("VALIDATION", "malformed request body")

    @app.exception_handler(Exception)
    async def internal(request: Request, exc: Exception):
        return _error_response("INTERNAL", "internal error")

    def require_admin(request: Request):
        header = request.headers.get("authorization", "")
        if not header.startswith("Bearer "):
            raise ApiError("UNAUTHORIZED", "missing bearer token")
        session = state.sessions.resolve(header[len("Bearer ") :])
        if session is None:
            raise ApiError("UNAUTHORIZED", "invalid or expired token")
        return session

    @app.get("/api/v1/health")
    def health():
        catalog = state.poi_store.snapshot()
        return {
            "status": "ok",
            "pois": len(catalog.pois),
            "revision": catalog.revision,
        }

    @app.get("/api/v1/pois")
    def get_pois(category: str | None = None, near: str | None = None, k: str | None = None):
        catalog = state.poi_store.snapshot()
        if near is None:
            if k is not None:
                raise ApiError("VALIDATION", "k requires near")
            return {"pois": [p.to_json() for p in catalog.list(category)]}
        origin = parse_coord(near, "near")
        if k is None:
            k_val = DEFAULT_NEAR_K
        else:
            try:
                k_val = int(k)
            except ValueError:
                raise ApiError("VALIDATION", "k must be an integer") from None
            if k_val < 0:
                raise ApiError("VALIDATION", "k must be >= 0")
        index = catalog.index
        if category is not None:
            index = spatial.build(
                [
                    (p.id, p.location)
                    for p in catalog.pois.values()
                    if p.category == category
                ]
            )
        hits = spatial.k_nearest(index, origin, k_val)
        out = []
        for poi_id, dist in hits:
            doc = catalog.pois[poi_id].to_json()
            doc["distance_m"] = dist
            out.append(doc)
        return {"pois": out}

    @app.get("/api/v1/pois/{poi_id}")
    def get_poi(poi_id: str):
        return state.poi_store.snapshot().get(poi_id).to_json()

    # `from` is a reserved word, so the handler reads query params directly.
    @app.get("/api/v1/route")
    def get_route(request: Request):
        params = request.query_params
        mode = params.get("mode", "walking")
        to_poi = params.get("to_poi")
        if mode not in routing.MODES:
            raise ApiError("VALIDATION", f"mode must be one of {', '.join(routing.MODES)}")
        if to_poi is None:
            raise ApiError("VALIDATION", "to_poi is required")
        origin = parse_coord(params.get("from"), "from")
        poi = state.poi_store.snapshot().get(to_poi)
        return route_to_json(routing.route(state.graph, origin, poi.location, mode))

    @app.post("/api/v1/admin/login")
    def login(body: dict):
        username = body.get("username")
        password = body.get("password")
        if not isinstance(username, str) or not isinstance(password, str):
            raise ApiError("VALIDATION", "username and password are required")
        if not state.users.check(username, password):
            # Identical response for unknown user and wrong password.
            raise ApiError("UNAUTHORIZED", "invalid credentials")
        session = state.sessions.open(username)
        return {"token": session.token, "expires_at": session.expires_at}

    @app.post("/api/v1/admin/pois", status_code=201)
    def admin_create(body: dict, request: Request):
        require_admin(request)
        poi = state.poi_store.create(
            name=body.get("name"),
            description=body.get("description", ""),
            category=body.get("category", "nature"),
            lat=body.get("lat"),
            lon=body.get("lon"),
        )
        return poi.to_json()

    @app.put("/api/v1/admin/pois/{poi_id}")
    def admin_update(poi_id: str, body: dict, request: Request):
        require_admin(request)
        poi = state.poi_store.update(
            poi_id,
            name=body.get("name"),
            description=body.get("description"),
            category=body.get("category"),
            lat=body.get("lat"),
            lon=body.get("lon"),
        )
        return poi.to_json()

    @app.delete("/api/v1/admin/pois/{poi_id}", status_code=204)
    def admin_delete(poi_id: str, request: Request):
        require_admin(request)
        state.poi_store.delete(poi_id)

    return app


def fixture_path(name: str) -> Path:
    return Path(__file__).parent / "fixtures" / name


def build_app_from_dirs(
    data_dir: str | Path,
    graph_file: str | Path | None = None,
    allowed_origin: str | None = None,
    token_ttl_s: float | None = None,
    auto_seed: bool = True,
) -> FastAPI:
    """Assemble an app from a data directory, seeding an empty store."""
    data_dir = Path(data_dir)
    data_dir.mkdir(parents=True, exist_ok=True)
    poi_store = PoiStore(data_dir / "pois.json")
    if auto_seed and not poi_store.snapshot().pois:
        poi_store.seed(fixture_path("seed_pois.json"))
    graph = routing.load_graph(graph_file or fixture_path("roads.json"))
    users = UserStore(data_dir / "users.json")
    sessions = SessionManager(ttl_s=token_ttl_s) if token_ttl_s else SessionManager()
    return create_app(poi_store, graph, users, sessions, allowed_origin)
