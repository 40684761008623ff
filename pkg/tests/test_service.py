import time

import jsonschema
import pytest
from fastapi.testclient import TestClient

from chromaharmony.formats import PALETTE_SCHEMA, REPORT_SCHEMA
from chromaharmony.service import create_app


@pytest.fixture()
def client():
    return TestClient(create_app())


HARMONIC = ["lch(20,10,100)", "lch(40,30,102)", "lch(60,50,98)"]


class TestHealth:
    def test_healthz(self, client):
        resp = client.get("/healthz")
        assert resp.status_code == 200
        assert resp.text == "ok"


class TestEvaluate:
    def test_valid_palette(self, client):
        resp = client.post("/api/evaluate", json={"colors": HARMONIC})
        assert resp.status_code == 200
        body = resp.json()
        jsonschema.validate(body, REPORT_SCHEMA)
        assert body["harmonic"] is True

    def test_malformed_color_400_with_path(self, client):
        resp = client.post("/api/evaluate", json={"colors": ["#808080", "#GGGGGG"]})
        assert resp.status_code == 400
        assert "colors[1]" in resp.json()["detail"]

    def test_empty_list_422(self, client):
        resp = client.post("/api/evaluate", json={"colors": []})
        assert resp.status_code == 422

    def test_missing_colors_400(self, client):
        resp = client.post("/api/evaluate", json={})
        assert resp.status_code == 400

    def test_malformed_json_400(self, client):
        resp = client.post("/api/evaluate", content=b"{not json",
                           headers={"content-type": "application/json"})
        assert resp.status_code == 400

    def test_stateless(self, client):
        body = {"colors": HARMONIC, "params": {"t_line": 6}}
        first = client.post("/api/evaluate", json=body).json()
        second = client.post("/api/evaluate", json=body).json()
        assert first == second

    def test_params_override(self, client):
        colors = ["lch(20,60,0)", "lch(60,60,60)"]
        strict = client.post("/api/evaluate", json={"colors": colors}).json()
        loose = client.post(
            "/api/evaluate",
            json={"colors": colors, "params": {"hue_db_threshold": 50}},
        ).json()
        assert strict["harmonic"] is False
        assert loose["harmonic"] is True

    def test_bad_params_400(self, client):
        resp = client.post("/api/evaluate",
                           json={"colors": HARMONIC, "params": {"nope": 1}})
        assert resp.status_code == 400


class TestGenerate:
    def test_deterministic(self, client):
        body = {"r": 7.07, "phi": 135, "k": 3, "seed": 5}
        first = client.post("/api/generate", json=body)
        second = client.post("/api/generate", json=body)
        assert first.status_code == 200
        assert first.json() == second.json()
        jsonschema.validate(first.json(), PALETTE_SCHEMA)
        assert len(first.json()["colors"]) == 3

    def test_infeasible_line_empty_with_reason(self, client):
        resp = client.post("/api/generate", json={"r": 200, "phi": 90, "k": 3})
        assert resp.status_code == 200
        body = resp.json()
        assert body["colors"] == []
        assert body["reason"] == "no_feasible_points"

    def test_k_one_400(self, client):
        resp = client.post("/api/generate", json={"r": 10, "phi": 90, "k": 1})
        assert resp.status_code == 400

    def test_missing_r_400(self, client):
        resp = client.post("/api/generate", json={"phi": 90})
        assert resp.status_code == 400


class TestSessions:
    def _create(self, client, params=None):
        resp = client.post("/api/sessions", json={"params": params} if params else None)
        assert resp.status_code == 201
        return resp.json()["id"]

    def test_create_add_report(self, client):
        sid = self._create(client)
        resp = client.post(f"/api/sessions/{sid}/colors", json={"color": "#808080"})
        assert resp.status_code == 200
        body = resp.json()
        jsonschema.validate(body, REPORT_SCHEMA)
        assert body["hue_pattern"] == "analog"
        assert body["tone_pattern"] == "point"
        report = client.get(f"/api/sessions/{sid}/report").json()["report"]
        assert report["hue_pattern"] == "analog"

    def test_suggestion_keeps_harmonic(self, client):
        sid = self._create(client)
        client.post(f"/api/sessions/{sid}/colors", json={"color": "lch(20,10,100)"})
        client.post(f"/api/sessions/{sid}/colors", json={"color": "lch(40,30,102)"})
        sugg = client.get(f"/api/sessions/{sid}/suggestions", params={"n": 3})
        assert sugg.status_code == 200
        suggestions = sugg.json()["suggestions"]
        assert suggestions
        top = suggestions[0]
        resp = client.post(f"/api/sessions/{sid}/colors",
                           json={"color": top["lch"]})
        assert resp.json()["harmonic"] is True

    def test_undo_restores(self, client):
        sid = self._create(client)
        client.post(f"/api/sessions/{sid}/colors", json={"color": "lch(20,10,100)"})
        before = client.get(f"/api/sessions/{sid}/report").json()["report"]
        client.post(f"/api/sessions/{sid}/colors", json={"color": "lch(20,10,100)"})
        resp = client.delete(f"/api/sessions/{sid}/colors/last")
        assert resp.status_code == 200
        assert resp.json()["report"] == before

    def test_undo_on_fresh_session_400(self, client):
        sid = self._create(client)
        resp = client.delete(f"/api/sessions/{sid}/colors/last")
        assert resp.status_code == 400

    def test_unknown_session_404(self, client):
        assert client.get("/api/sessions/nope/report").status_code == 404
        assert client.post("/api/sessions/nope/colors",
                           json={"color": "#808080"}).status_code == 404

    def test_expired_session_404(self):
        client = TestClient(create_app(ttl_seconds=0.05))
        sid = self._create(client)
        time.sleep(0.1)
        assert client.get(f"/api/sessions/{sid}/report").status_code == 404

    def test_bad_color_400(self, client):
        sid = self._create(client)
        resp = client.post(f"/api/sessions/{sid}/colors", json={"color": "nope"})
        assert resp.status_code == 400

    def test_suggestions_on_empty_session_400(self, client):
        sid = self._create(client)
        assert client.get(f"/api/sessions/{sid}/suggestions").status_code == 400

    def test_busy_session_409(self):
        client = TestClient(create_app(lock_timeout=0.05))
        sid = self._create(client)
        lock = client.app.state.store.lock(sid)
        assert lock.acquire()
        try:
            resp = client.post(f"/api/sessions/{sid}/colors",
                               json={"color": "#808080"})
            assert resp.status_code == 409
        finally:
            lock.release()

    def test_session_params_respected(self, client):
        sid = self._create(client, params={"hue_db_threshold": 50})
        client.post(f"/api/sessions/{sid}/colors", json={"color": "lch(20,60,0)"})
        resp = client.post(f"/api/sessions/{sid}/colors",
                           json={"color": "lch(60,60,60)"})
        assert resp.json()["harmonic"] is True
