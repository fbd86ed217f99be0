"""Regenerate the golden wire fixtures in tests/golden/.

Run from the repository root:  python tests/record_golden.py
"""

import json
import sys
import tempfile
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from fastapi.testclient import TestClient

from test_golden import ADMIN_PASSWORD, KAMBANG_IWAK_ID, build_seeded_app

GOLDEN_DIR = Path(__file__).parent / "golden"

# Every endpoint, success plus each error code it can produce. Responses with
# empty bodies (204) are exercised by the lifecycle test instead.
CASES = [
    ("01_health_ok", {"method": "GET", "path": "/api/v1/health"}),
    ("02_pois_list_ok", {"method": "GET", "path": "/api/v1/pois"}),
    (
        "03_pois_near_ok",
        {
            "method": "GET",
            "path": "/api/v1/pois",
            "params": {"near": "-2.97,104.75", "k": "3"},
        },
    ),
    ("04_poi_get_ok", {"method": "GET", "path": f"/api/v1/pois/{KAMBANG_IWAK_ID}"}),
    ("05_poi_get_not_found", {"method": "GET", "path": "/api/v1/pois/no-such-poi"}),
    (
        "06_pois_near_validation",
        {"method": "GET", "path": "/api/v1/pois", "params": {"near": "banana"}},
    ),
    (
        "07_route_ok",
        {
            "method": "GET",
            "path": "/api/v1/route",
            "params": {
                "from": "-2.9805,104.7440",
                "to_poi": KAMBANG_IWAK_ID,
                "mode": "walking",
            },
        },
    ),
    (
        "08_route_not_found",
        {
            "method": "GET",
            "path": "/api/v1/route",
            "params": {"from": "0,0", "to_poi": "no-such-poi"},
        },
    ),
    (
        "09_route_validation",
        {
            "method": "GET",
            "path": "/api/v1/route",
            "params": {"from": "0,0", "to_poi": KAMBANG_IWAK_ID, "mode": "teleport"},
        },
    ),
    (
        "10_login_ok",
        {
            "method": "POST",
            "path": "/api/v1/admin/login",
            "body": {"username": "admin", "password": ADMIN_PASSWORD},
        },
    ),
    (
        "11_login_unauthorized",
        {
            "method": "POST",
            "path": "/api/v1/admin/login",
            "body": {"username": "admin", "password": "wrong-password"},
        },
    ),
    (
        "12_create_unauthorized",
        {
            "method": "POST",
            "path": "/api/v1/admin/pois",
            "body": {"name": "X", "lat": -2.9, "lon": 104.7},
        },
    ),
    (
        "13_create_ok",
        {
            "method": "POST",
            "path": "/api/v1/admin/pois",
            "auth": "valid",
            "body": {
                "name": "Golden Spot",
                "description": "created by the golden suite",
                "lat": -2.955,
                "lon": 104.745,
            },
        },
    ),
    (
        "14_create_validation",
        {
            "method": "POST",
            "path": "/api/v1/admin/pois",
            "auth": "valid",
            "body": {"name": "Bad", "lat": 95, "lon": 104.7},
        },
    ),
    (
        "15_update_not_found",
        {
            "method": "PUT",
            "path": "/api/v1/admin/pois/no-such-poi",
            "auth": "valid",
            "body": {"name": "Renamed"},
        },
    ),
    (
        "16_delete_unauthorized",
        {"method": "DELETE", "path": "/api/v1/admin/pois/no-such-poi"},
    ),
]


def main():
    GOLDEN_DIR.mkdir(exist_ok=True)
    app = build_seeded_app(Path(tempfile.mkdtemp()))
    client = TestClient(app, raise_server_exceptions=False)
    login = client.post(
        "/api/v1/admin/login", json={"username": "admin", "password": ADMIN_PASSWORD}
    )
    token = login.json()["token"]
    for name, request in CASES:
        headers = {}
        if request.get("auth") == "valid":
            headers["Authorization"] = f"Bearer {token}"
        response = client.request(
            request["method"],
            request["path"],
            params=request.get("params"),
            json=request.get("body"),
            headers=headers,
        )
        doc = {
            "request": request,
            "status": response.status_code,
            "response": response.json(),
        }
        (GOLDEN_DIR / f"{name}.json").write_text(json.dumps(doc, indent=2) + "\n")
        print(f"{name}: {response.status_code}")


if __name__ == "__main__":
    main()
