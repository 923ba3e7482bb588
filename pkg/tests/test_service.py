"""HTTP surface: endpoint contracts, wire formats, and error mapping."""

import pytest
from fastapi.testclient import TestClient

from bordarange.model import Profile, pattern_of
from bordarange.service import create_app


@pytest.fixture()
def client(tmp_path):
    return TestClient(create_app(tmp_path / "cache.json"))


def test_health(client):
    response = client.get("/health")
    assert response.status_code == 200
    assert response.json()["status"] == "ok"


def test_classify_endpoint(client):
    response = client.post("/classify", json={"pattern": [2, 4, 4, 2]})
    assert response.status_code == 200
    body = response.json()
    assert body == {
        "pattern": [2, 4, 4, 2],
        "verdict": "in_range",
        "rule": "NewLemma",
        "applicable_n": "all odd n >= 3",
    }


def test_classify_rejects_bad_pattern(client):
    assert client.post("/classify", json={"pattern": [2, 0]}).status_code == 400
    assert client.post("/classify", json={"pattern": []}).status_code == 400
    assert client.post("/classify", json={"pattern": "nope"}).status_code == 422


def test_construct_ok_and_wire_round_trip(client):
    response = client.post("/construct", json={"pattern": [2, 4, 4, 2], "n": 3})
    assert response.status_code == 200
    body = response.json()
    assert body["status"] == "ok"
    assert body["rule"] == "NewLemma"
    assert body["plan"] == ["SeqI(fours=2)"]
    profile = Profile.from_dict(body["profile"])
    assert pattern_of(profile) == (2, 4, 4, 2)
    assert body["scores"] == list(__import__("bordarange").borda_scores(profile))


def test_construct_negative_and_unsupported(client):
    body = client.post("/construct", json={"pattern": [2, 4], "n": 3}).json()
    assert body["status"] == "not_in_range"
    assert body["rule"] == "Theorem3"
    assert body["profile"] is None
    body = client.post("/construct", json={"pattern": [3, 5], "n": 3}).json()
    assert body["status"] == "unsupported"
    assert body["rule"] == "OddLevel"
    body = client.post("/construct", json={"pattern": [8, 4, 4], "n": 3}).json()
    assert body["status"] == "unsupported"


def test_construct_rejects_even_n(client):
    assert client.post("/construct", json={"pattern": [2, 2], "n": 4}).status_code == 400


def test_verify_endpoint(client):
    profile = {"m": 4, "n": 3, "rankings": [[0, 1, 2, 3], [2, 3, 0, 1], [1, 3, 0, 2]]}
    body = client.post("/verify", json={"profile": profile, "expect": [2, 2]}).json()
    assert body["scores"] == [7, 7, 8, 8]
    assert body["pattern"] == [2, 2]
    assert body["levels"] == [[0, 1], [2, 3]]
    assert body["matches_expected"] is True
    body = client.post("/verify", json={"profile": profile, "expect": [1, 1, 2]}).json()
    assert body["matches_expected"] is False
    body = client.post("/verify", json={"profile": profile}).json()
    assert body["matches_expected"] is None


def test_verify_rejects_invalid_profile(client):
    bad = {"m": 3, "n": 1, "rankings": [[0, 0, 2]]}
    assert client.post("/verify", json={"profile": bad}).status_code == 400


def test_construct_then_verify_pipeline(client):
    for pattern in ([2, 2], [2, 4, 4, 2], [4, 2, 2], [2, 2, 2, 2]):
        built = client.post("/construct", json={"pattern": pattern, "n": 3}).json()
        assert built["status"] == "ok"
        checked = client.post(
            "/verify", json={"profile": built["profile"], "expect": pattern}
        ).json()
        assert checked["matches_expected"] is True


def test_search_endpoint_caches(client):
    first = client.post("/search", json={"pattern": [4, 4], "n": 3, "seed": 0}).json()
    assert first["status"] == "found"
    assert first["cached"] is False
    profile = Profile.from_dict(first["profile"])
    assert pattern_of(profile) == (4, 4)
    second = client.post("/search", json={"pattern": [4, 4], "n": 3, "seed": 0}).json()
    assert second["status"] == "found"
    assert second["cached"] is True
    assert second["profile"] == first["profile"]


def test_search_not_found_is_flagged_exhaustive(client):
    body = client.post("/search", json={"pattern": [2, 4], "n": 3}).json()
    assert body == {
        "status": "not_found",
        "pattern": [2, 4],
        "n": 3,
        "exhaustive": True,
        "evaluations": body["evaluations"],
        "profile": None,
        "cached": False,
    }


def test_enumerate_endpoint(client):
    body = client.post("/enumerate", json={"m": 3, "n": 3}).json()
    assert body["mode"] == "exhaustive"
    patterns = [tuple(e["pattern"]) for e in body["achieved"]]
    assert sorted(patterns) == [(1, 1, 1), (1, 2), (2, 1), (3,)]
    for entry in body["achieved"]:
        witness = Profile.from_dict(entry["witness"])
        assert pattern_of(witness) == tuple(entry["pattern"])


def test_enumerate_budget_maps_to_400(client):
    response = client.post("/enumerate", json={"m": 9, "n": 3})
    assert response.status_code == 400


def test_cross_check_endpoint(client):
    body = client.post("/cross-check", json={"max_m": 4, "n": 3}).json()
    assert body["consistent"] is True
    assert body["contradictions"] == []
    assert body["patterns_checked"] == 2 + 4 + 8
