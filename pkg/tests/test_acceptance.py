"""Acceptance suite: one test per release criterion, each printing a
pass/fail line with its runtime and enforcing its time budget.

Run with `pytest tests/test_acceptance.py -s` to see the per-criterion lines.
The whole suite exercises only the Python package; no web-client build is
needed or touched.
"""

import json
import math
import os
import random
import sys
import time
from contextlib import contextmanager
from pathlib import Path

import httpx
import pytest
from fastapi.testclient import TestClient

from naturenav import spatial
from naturenav.geo import (
    EARTH_RADIUS_M,
    MAX_DISTANCE_M,
    BoundingBox,
    haversine_distance,
    make_point,
)
from naturenav.routing import NoPath, RoadGraph, load_graph, shortest_path
from naturenav.server import build_app_from_dirs, fixture_path
from naturenav.store import PoiStore, load, persist
from oracles import (
    brute_force_nearest,
    brute_force_radius,
    enumerate_shortest,
    haversine_reference,
)
from test_golden import (
    ADMIN_PASSWORD,
    build_seeded_app,
    golden_cases,
    perform,
)
from test_routing import DIAMOND_EDGES, DIAMOND_NODES, write_graph
from wire import LiveServer, canonicalize

SEED_NAMES = {
    "Benteng Kuto Besak",
    "Kambang Iwak",
    "Kerto Island",
    "Kemaro Island",
    "Punti Kayu",
    "Musi River",
}

PALEMBANG_BOX = BoundingBox(min_lat=-3.10, max_lat=-2.85, min_lon=104.65, max_lon=104.85)


@contextmanager
def criterion(name: str, budget_s: float):
    start = time.perf_counter()
    try:
        yield
    except BaseException:
        print(f"[FAIL] {name}", file=sys.stderr)
        raise
    elapsed = time.perf_counter() - start
    status = "PASS" if elapsed < budget_s else "FAIL"
    print(f"[{status}] {name} ({elapsed:.2f}s, budget {budget_s:.0f}s)")
    assert elapsed < budget_s, f"{name} exceeded {budget_s}s budget: {elapsed:.2f}s"


def random_point(rng):
    return make_point(rng.uniform(-90, 90), rng.uniform(-180, 180))


def test_seed_fidelity(tmp_path):
    with criterion("seed fidelity: six destinations inside the city box", 1.0):
        app = build_app_from_dirs(tmp_path)
        client = TestClient(app)
        pois = client.get("/api/v1/pois").json()["pois"]
        assert {p["name"] for p in pois} == SEED_NAMES
        assert len(pois) == 6
        for p in pois:
            assert PALEMBANG_BOX.contains(make_point(p["lat"], p["lon"])), p["name"]


def test_geodesy_suite():
    with criterion("geodesy: fixed checks + 10,000 random-pair properties", 10.0):
        a, b = make_point(-2.99, 104.76), make_point(-2.95, 104.80)
        assert haversine_distance(a, a) == 0.0
        assert haversine_distance(a, b) == haversine_distance(b, a)
        antipodal = haversine_distance(make_point(0, 0), make_point(0, 180))
        assert antipodal == pytest.approx(math.pi * EARTH_RADIUS_M, rel=1e-6)
        equator_arc = haversine_distance(make_point(0, 0), make_point(0, 1))
        assert equator_arc == pytest.approx(EARTH_RADIUS_M * math.radians(1), rel=1e-6)
        assert haversine_distance(a, b) == pytest.approx(
            haversine_reference(a.lat, a.lon, b.lat, b.lon), rel=1e-6
        )
        rng = random.Random(20240826)
        for _ in range(10_000):
            p, q, r = random_point(rng), random_point(rng), random_point(rng)
            d_pq = haversine_distance(p, q)
            assert d_pq == haversine_distance(q, p)
            assert 0.0 <= d_pq <= MAX_DISTANCE_M
            assert haversine_distance(p, r) <= d_pq + haversine_distance(q, r) + 1e-6


def test_index_oracle_equivalence():
    with criterion("spatial index equals brute force on 200 random trials", 30.0):
        rng = random.Random(4321)
        for trial in range(200):
            n = rng.randint(0, 1000)
            if rng.random() < 0.5:
                entries = [(f"p{i:04d}", random_point(rng)) for i in range(n)]
            else:
                lat0, lon0 = rng.uniform(-80, 80), rng.uniform(-170, 170)
                entries = [
                    (
                        f"p{i:04d}",
                        make_point(
                            max(-90, min(90, lat0 + rng.gauss(0, 0.05))),
                            max(-180, min(180, lon0 + rng.gauss(0, 0.05))),
                        ),
                    )
                    for i in range(n)
                ]
            index = spatial.build(entries)
            origin = random_point(rng)
            k = rng.randint(0, 20)
            assert spatial.k_nearest(index, origin, k) == brute_force_nearest(
                entries, origin, k, haversine_distance
            ), trial
            radius = rng.uniform(0, MAX_DISTANCE_M)
            assert spatial.within_radius(index, origin, radius) == brute_force_radius(
                entries, origin, radius, haversine_distance
            ), trial


def test_routing_oracle(tmp_path):
    with criterion("dijkstra equals exhaustive enumeration on 100 graphs", 30.0):
        diamond = load_graph(write_graph(tmp_path, DIAMOND_NODES, DIAMOND_EDGES))
        path, weight = shortest_path(diamond, "A", "D")
        assert path == ["A", "C", "D"]
        assert weight == pytest.approx(190.0)

        rng = random.Random(777)
        for trial in range(100):
            n = rng.randint(2, 10)
            ids = [f"n{i}" for i in range(n)]
            nodes = {
                i: make_point(rng.uniform(-0.02, 0.02), rng.uniform(-0.02, 0.02))
                for i in ids
            }
            edges = {}
            adjacency = {i: [] for i in ids}
            for u in ids:
                for v in ids:
                    if u != v and rng.random() < 0.35:
                        w = haversine_distance(nodes[u], nodes[v]) * rng.uniform(1, 2) + 1
                        edges[(u, v)] = w
                        adjacency[u].append((v, w))
            graph = RoadGraph(
                nodes=nodes, adjacency={i: tuple(v) for i, v in adjacency.items()}
            )
            src, dst = rng.sample(ids, 2)
            expected = enumerate_shortest(set(ids), edges, src, dst)
            if expected is None:
                with pytest.raises(NoPath):
                    shortest_path(graph, src, dst)
            else:
                got_path, got_weight = shortest_path(graph, src, dst)
                assert got_weight == pytest.approx(expected[1], rel=1e-9), trial
                assert got_path == expected[0], trial


def test_crash_safe_persistence(tmp_path, monkeypatch):
    with criterion("persistence: 100 random round-trips + crash simulation", 10.0):
        rng = random.Random(11)
        for trial in range(100):
            path = tmp_path / f"cat{trial}.json"
            store = PoiStore(path)
            for i in range(rng.randint(0, 6)):
                store.create(
                    f"poi {trial}-{i}",
                    "d" * rng.randint(0, 20),
                    "nature",
                    rng.uniform(-90, 90),
                    rng.uniform(-180, 180),
                )
            reloaded = load(path)
            assert reloaded.pois == store.snapshot().pois
            assert reloaded.revision == store.snapshot().revision

        # Crash between temp-file write and rename: the visible file must
        # still be the complete old catalog.
        path = tmp_path / "crash.json"
        store = PoiStore(path)
        store.create("Survivor", "", "nature", -2.99, 104.76)
        before = path.read_bytes()

        def crash(src, dst):
            raise OSError("simulated crash")

        monkeypatch.setattr(os, "replace", crash)
        with pytest.raises(OSError):
            store.create("Casualty", "", "nature", -2.98, 104.77)
        monkeypatch.undo()
        assert path.read_bytes() == before
        assert [p.name for p in load(path).list()] == ["Survivor"]


def test_wire_golden_and_lifecycle(tmp_path):
    with criterion("wire goldens + full CRUD lifecycle on a live server", 10.0):
        app = build_seeded_app(tmp_path)
        with LiveServer(app) as server:
            with httpx.Client(base_url=server.base_url, timeout=10) as client:
                login = client.post(
                    "/api/v1/admin/login",
                    json={"username": "admin", "password": ADMIN_PASSWORD},
                )
                token = login.json()["token"]
                for param in golden_cases():
                    case = param.values[0]
                    response = perform(client, case, token=token)
                    assert response.status_code == case["status"], param.id
                    assert canonicalize(response.json()) == canonicalize(
                        case["response"]
                    ), param.id

                headers = {"Authorization": f"Bearer {token}"}
                created = client.post(
                    "/api/v1/admin/pois",
                    json={"name": "Lifecycle", "lat": -2.96, "lon": 104.74},
                    headers=headers,
                )
                assert created.status_code == 201
                pid = created.json()["id"]
                assert client.get(f"/api/v1/pois/{pid}").status_code == 200
                assert (
                    client.put(
                        f"/api/v1/admin/pois/{pid}",
                        json={"description": "x"},
                        headers=headers,
                    ).status_code
                    == 200
                )
                routed = client.get(
                    "/api/v1/route", params={"from": "-2.96,104.74", "to_poi": pid}
                )
                assert routed.status_code == 200
                assert (
                    client.delete(f"/api/v1/admin/pois/{pid}", headers=headers).status_code
                    == 204
                )
                assert client.get(f"/api/v1/pois/{pid}").status_code == 404


def test_auth_matrix(tmp_path):
    with criterion("auth matrix: every mutation x bad token -> 401, no writes", 5.0):
        app = build_seeded_app(tmp_path)
        client = TestClient(app, raise_server_exceptions=False)
        some_id = client.get("/api/v1/pois").json()["pois"][0]["id"]
        mutations = [
            ("POST", "/api/v1/admin/pois", {"name": "X", "lat": -2.9, "lon": 104.7}),
            ("PUT", f"/api/v1/admin/pois/{some_id}", {"name": "X"}),
            ("DELETE", f"/api/v1/admin/pois/{some_id}", None),
        ]
        bad_headers = [
            {},
            {"Authorization": "Bearer garbage-token"},
            {"Authorization": "Token wrong-scheme"},
        ]
        store_file = tmp_path / "pois.json"
        before = store_file.read_bytes()
        for method, url, body in mutations:
            for headers in bad_headers:
                r = client.request(method, url, json=body, headers=headers)
                assert r.status_code == 401, (method, url, headers)
                assert r.json()["error"]["code"] == "UNAUTHORIZED"
        assert store_file.read_bytes() == before


def test_runs_without_web_client_build():
    with criterion("primary suite independent of any web-client build", 1.0):
        # Nothing in the installed package or this suite reaches for a
        # frontend bundle; the package ships no web assets at all.
        import naturenav

        package_dir = Path(naturenav.__file__).parent
        bundles = list(package_dir.rglob("*.html")) + list(package_dir.rglob("*.js"))
        assert bundles == []
