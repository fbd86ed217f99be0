"""Operator command line: serve the API, manage admins, query the catalog.

All data errors exit nonzero with a diagnostic on stderr; query output goes
to stdout and is machine-readable with --json.
"""

from __future__ import annotations

import json
import os
import sys
from pathlib import Path

import click

from . import routing, server, spatial, store
from .auth import AuthError, UserStore
from .geo import GeoError, make_point
from .routing import load_graph
from .server import fixture_path, parse_coord, route_to_json
from .store import CorruptStore, PoiStore


def _fail(message: str):
    click.echo(f"error: {message}", err=True)
    sys.exit(1)


def _parse_latlon(raw: str, flag: str):
    try:
        lat_s, lon_s = raw.split(",", 1)
        return make_point(float(lat_s), float(lon_s))
    except (ValueError, GeoError) as exc:
        _fail(f"{flag} must be 'lat,lon': {exc}")


def _open_store(data_dir: str) -> PoiStore:
    try:
        return PoiStore(Path(data_dir) / "pois.json")
    except CorruptStore as exc:
        _fail(str(exc))


@click.group()
@click.option("--data-dir", default="data", show_default=True, help="Directory holding pois.json and users.json.")
@click.option("--graph", "graph_file", default=None, help="Road graph file (defaults to the shipped Palembang fixture).")
@click.option("--json", "as_json", is_flag=True, help="Emit machine-readable JSON on stdout.")
@click.pass_context
def main(ctx, data_dir, graph_file, as_json):
    """Location-based nature-tourism service."""
    ctx.obj = {"data_dir": data_dir, "graph": graph_file, "json": as_json}


@main.command()
@click.option("--listen", default="127.0.0.1:8080", show_default=True, help="host:port to bind.")
@click.option("--origin", default=None, help="Allowed web-client origin for CORS.")
@click.option("--token-ttl", default=None, type=float, help="Admin token lifetime in seconds.")
@click.option("--no-seed", is_flag=True, help="Do not auto-seed an empty store.")
@click.pass_obj
def serve(obj, listen, origin, token_ttl, no_seed):
    """Run the HTTP API server."""
    import uvicorn

    try:
        app = server.build_app_from_dirs(
            obj["data_dir"],
            graph_file=obj["graph"],
            allowed_origin=origin,
            token_ttl_s=token_ttl,
            auto_seed=not no_seed,
        )
    except (CorruptStore, routing.CorruptGraph) as exc:
        _fail(str(exc))
    try:
        host, port_s = listen.rsplit(":", 1)
        port = int(port_s)
    except ValueError:
        _fail(f"--listen must be host:port, got {listen!r}")
    uvicorn.run(app, host=host, port=port, log_level="info")


@main.group()
def admin():
    """Administrator account management."""


@admin.command("add-user")
@click.argument("username")
@click.pass_obj
def admin_add_user(obj, username):
    """Create an admin login.

    The password is read from NATURENAV_PASSWORD or prompted for; it is
    never taken as a command-line argument.
    """
    password = os.environ.get("NATURENAV_PASSWORD")
    if password is None:
        password = click.prompt("Password", hide_input=True, confirmation_prompt=True)
    data_dir = Path(obj["data_dir"])
    data_dir.mkdir(parents=True, exist_ok=True)
    users = UserStore(data_dir / "users.json")
    try:
        users.add_user(username, password)
    except AuthError as exc:
        _fail(str(exc))
    click.echo(f"created admin user {username}")


@main.command()
@click.option("--at", required=True, help="Query position as 'lat,lon'.")
@click.option("-k", "k", default=5, show_default=True, type=int)
@click.pass_obj
def nearest(obj, at, k):
    """Print the k nearest POIs to a position."""
    origin = _parse_latlon(at, "--at")
    if k < 0:
        _fail("-k must be >= 0")
    catalog = _open_store(obj["data_dir"]).snapshot()
    hits = spatial.k_nearest(catalog.index, origin, k)
    if obj["json"]:
        out = []
        for poi_id, dist in hits:
            doc = catalog.pois[poi_id].to_json()
            doc["distance_m"] = dist
            out.append(doc)
        click.echo(json.dumps({"pois": out}, ensure_ascii=False))
        return
    for poi_id, dist in hits:
        click.echo(f"{poi_id}\t{catalog.pois[poi_id].name}\t{dist:.1f}")


@main.command()
@click.option("--from", "from_", required=True, help="Origin position as 'lat,lon'.")
@click.option("--to-poi", required=True, help="Destination POI id.")
@click.option("--mode", default="walking", show_default=True, type=click.Choice(routing.MODES))
@click.pass_obj
def route(obj, from_, to_poi, mode):
    """Compute a route from a position to a POI."""
    origin = _parse_latlon(from_, "--from")
    catalog = _open_store(obj["data_dir"]).snapshot()
    try:
        poi = catalog.get(to_poi)
    except store.NotFound as exc:
        _fail(str(exc))
    try:
        graph = load_graph(obj["graph"] or fixture_path("roads.json"))
    except routing.CorruptGraph as exc:
        _fail(str(exc))
    result = routing.route(graph, origin, poi.location, mode)
    if obj["json"]:
        click.echo(json.dumps(route_to_json(result), ensure_ascii=False))
        return
    click.echo(f"kind: {result.kind}")
    click.echo(f"distance_m: {result.distance_m:.1f}")
    click.echo(f"duration_s: {result.duration_s:.1f}")
    click.echo(f"polyline_points: {len(result.polyline)}")


@main.command("import")
@click.option("--file", "file_", required=True, type=click.Path(exists=True, dir_okay=False))
@click.pass_obj
def import_cmd(obj, file_):
    """Bulk-load POIs from a file using the seed fixture schema."""
    poi_store = _open_store(obj["data_dir"])
    try:
        doc = json.loads(Path(file_).read_text(encoding="utf-8"))
        entries = doc["pois"]
    except (ValueError, KeyError) as exc:
        _fail(f"{file_}: {exc}")
    created = 0
    try:
        for raw in entries:
            poi_store.create(
                name=raw.get("name"),
                description=raw.get("description", ""),
                category=raw.get("category", "nature"),
                lat=raw.get("lat"),
                lon=raw.get("lon"),
            )
            created += 1
    except store.StoreError as exc:
        _fail(f"{file_}: after {created} records: {exc}")
    click.echo(f"imported {created} pois")


if __name__ == "__main__":
    main()
