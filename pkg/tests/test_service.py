"""HTTP service endpoints via the in-process test client."""

from __future__ import annotations

import pytest

pytest.importorskip("fastapi")
from fastapi.testclient import TestClient

from burnside.service import create_app


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


def test_health(client):
    payload = client.get("/health").json()
    assert payload["status"] == "ok"


def test_default_corpus(client):
    payload = client.get("/corpus/default").json()
    assert "D16" in payload["groups"] and len(payload["groups"]) == 18


def test_describe_descriptor(client):
    r = client.post("/describe", json={"descriptor": "SD16"})
    assert r.status_code == 200
    body = r.json()
    assert body["type"] == "semidihedral(16)" and body["classes"] == 10


def test_describe_ingestion_cayley(client):
    r = client.post("/describe", json={
        "group": {"name": "flip", "order": 2, "cayley": [[0, 1], [1, 0]]}})
    assert r.status_code == 200
    assert r.json()["order"] == 2


def test_describe_requires_exactly_one_source(client):
    assert client.post("/describe", json={}).status_code == 422
    assert client.post("/describe", json={
        "descriptor": "C2",
        "group": {"name": "x", "family": {"kind": "cyclic", "order": 2}},
    }).status_code == 422


def test_describe_bad_descriptor_422(client):
    r = client.post("/describe", json={"descriptor": "dihedral:9"})
    assert r.status_code == 422


def test_lattice_endpoint(client):
    r = client.post("/lattice", json={"descriptor": "Q8"})
    assert r.status_code == 200
    body = r.json()
    assert len(body["subgroups"]) == 6
    assert all(s["normal"] for s in body["subgroups"])


def test_marks_endpoint_with_idempotents(client):
    r = client.post("/marks", json={"descriptor": "C2", "include_idempotents": True})
    assert r.status_code == 200
    body = r.json()
    assert body["matrix"] == [[2, 1], [0, 1]]
    assert body["idempotents"][0]["coeffs"] == ["1/2", "0"]


def test_units_endpoint_methods(client):
    r = client.post("/units", json={"descriptor": "C2", "method": "both"})
    assert r.status_code == 200
    body = r.json()
    assert body["rank"] == 2 and body["agreement"] is True
    r = client.post("/units", json={"descriptor": "C2", "method": "genetic"})
    assert r.json()["agreement"] is None
    r = client.post("/units", json={"descriptor": "C2", "method": "sideways"})
    assert r.status_code == 422


def test_units_budget_422(client):
    r = client.post("/units", json={"descriptor": "D8", "budget": 4,
                                    "method": "brute"})
    assert r.status_code == 422


def test_genetic_endpoint(client):
    r = client.post("/genetic", json={"descriptor": "D16"})
    assert r.status_code == 200
    body = r.json()
    assert body["count"] == 6 and body["agrees_with_oracle"]
    types = sorted(e["type"] for e in body["entries"])
    assert types.count("cyclic(2)") == 4


def test_exp_endpoint(client):
    r = client.post("/exp", json={"descriptor": "D32"})
    assert r.status_code == 200
    body = r.json()
    assert body["surjective"] is False and body["image_rank"] == 5


def test_verify_endpoint_small(client):
    r = client.post("/verify", json={"groups": ["C2", "C9"], "jobs": 1})
    assert r.status_code == 200
    body = r.json()
    assert body["passed"] and [g["name"] for g in body["groups"]] == ["C2", "C9"]


def test_verify_endpoint_with_ingestion_entry(client):
    r = client.post("/verify", json={
        "groups": ["C2", {"name": "k4", "family": {"kind": "elementary_abelian",
                                                   "order": 4}}],
        "include_timings": True,
    })
    assert r.status_code == 200
    body = r.json()
    assert body["passed"]
    assert body["groups"][1]["name"] == "k4"
    assert body["groups"][1]["time_ms"] is not None


def test_verify_endpoint_bad_group_422(client):
    r = client.post("/verify", json={"groups": ["C2", "D7"]})
    assert r.status_code == 422


def test_verify_endpoint_parallel_matches_serial(client):
    serial = client.post("/verify", json={"groups": ["C2", "C4", "C3"],
                                          "jobs": 1}).json()
    parallel = client.post("/verify", json={"groups": ["C2", "C4", "C3"],
                                            "jobs": 2}).json()
    assert serial == parallel and serial["passed"]
