import json

import pytest
from fastapi.testclient import TestClient

from vizrec.service import create_app
from vizrec.session import SessionManager


@pytest.fixture
def client(six_fields):
    app = create_app(SessionManager({"six": six_fields}))
    return TestClient(app)


def create(client, algorithm="compassql-bfs"):
    resp = client.post("/sessions", json={"dataset": "six", "algorithm": algorithm})
    assert resp.status_code == 201
    return resp.json()


class TestEndpoints:
    def test_catalogs(self, client):
        assert client.get("/datasets").json() == {"datasets": ["six"]}
        algos = client.get("/algorithms").json()["algorithms"]
        assert "compassql-bfs" in algos and "dziban-dfs" in algos

    def test_create_and_views(self, client):
        view = create(client)
        sid = view["session_id"]
        assert len(view["related"]["items"]) == 5
        again = client.get(f"/sessions/{sid}/views")
        assert again.status_code == 200
        assert again.json() == view

    def test_toggle_promote_bookmark_more_log(self, client):
        sid = create(client)["session_id"]
        view = client.post(f"/sessions/{sid}/fields/amount/toggle").json()
        assert view["selection"] == ["amount"]

        item = view["related"]["items"][0]
        view = client.post(f"/sessions/{sid}/promote", json={"spec": item["spec"]}).json()
        assert view["specified"] == item["spec"]

        target = view["related"]["items"][0]["spec"]
        resp = client.post(f"/sessions/{sid}/bookmark", json={"spec": target})
        assert resp.json()["bookmarked"] is True

        assert client.post(f"/sessions/{sid}/hover",
                           json={"spec": target, "duration_ms": 700}).status_code == 200
        more = client.post(f"/sessions/{sid}/more")
        assert more.status_code == 200
        assert more.json()["related"]["page_index"] == 1

        log_lines = client.get(f"/sessions/{sid}/log").text.strip().splitlines()
        kinds = [json.loads(line)["kind"] for line in log_lines]
        for expected in ("exposed", "select_field", "specify", "bookmark",
                         "hover", "load_more"):
            assert expected in kinds

    def test_error_mapping(self, client):
        sid = create(client)["session_id"]
        assert client.post("/sessions", json={"dataset": "nope",
                                              "algorithm": "compassql-bfs"}).status_code == 404
        assert client.post("/sessions", json={"dataset": "six",
                                              "algorithm": "nope"}).status_code == 404
        assert client.get("/sessions/s999/views").status_code == 404
        assert client.post(f"/sessions/{sid}/fields/nope/toggle").status_code == 404
        rogue = {"mark": "point", "encoding": {"x": {"field": "amount"}}}
        assert client.post(f"/sessions/{sid}/promote",
                           json={"spec": rogue}).status_code == 409

    def test_cap_exceeded_maps_to_conflict(self, client):
        sid = create(client)["session_id"]
        for f in ("cat", "color", "amount"):
            client.post(f"/sessions/{sid}/fields/{f}/toggle")
        assert client.post(f"/sessions/{sid}/fields/level/toggle").status_code == 409

    def test_chart_payloads_are_vega_lite_documents(self, client):
        view = create(client)
        for item in view["related"]["items"]:
            doc = item["spec"]
            assert doc["$schema"].startswith("https://vega.github.io/schema/vega-lite/")
            assert "mark" in doc and "encoding" in doc
