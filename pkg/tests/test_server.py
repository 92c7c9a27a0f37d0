import io

import numpy as np
import pytest
from fastapi.testclient import TestClient

from chebydyn.server import create_app


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


class TestMeta:
    def test_landmarks(self, client):
        doc = client.get("/api/meta").json()
        head = doc["landmarks"]["head"]
        body = doc["landmarks"]["body"]
        assert abs(head["center"]["re"] - 13 / 6) < 1e-12
        assert abs(head["radius"] - 1 / 3) < 1e-12
        assert body["center"]["re"] == 3 and body["radius"] == 0.5
        assert doc["default_viewports"]["parameter"]["re0"] == -0.5


class TestClassifyEndpoint:
    def test_alpha2_superattracting_one(self, client):
        doc = client.get("/api/classify", params={"are": 2, "aim": 0}).json()
        one = [f for f in doc["fixed_points"] if f["label"] == "one"][0]
        assert one["stability"] == "superattracting"

    def test_alpha_five_halves_triple_parabolic(self, client):
        doc = client.get("/api/classify", params={"are": 2.5, "aim": 0}).json()
        one = [f for f in doc["fixed_points"] if f["label"] == "one"][0]
        assert one["multiplicity"] == 3 and one["stability"] == "parabolic"

    def test_includes_critical_and_verdict(self, client):
        doc = client.get("/api/classify", params={"are": 3, "aim": 0}).json()
        assert doc["cat_verdict"]["verdict"] == "strange"
        assert len(doc["critical_points"]["points"]) == 4

    def test_missing_parameter_400(self, client):
        assert client.get("/api/classify").status_code == 400

    def test_malformed_parameter_400(self, client):
        assert client.get("/api/classify", params={"are": "fish"}).status_code == 400


class TestPlaneEndpoints:
    def test_dyn_plane_png(self, client):
        from PIL import Image

        r = client.get("/api/dyn-plane", params={
            "are": 3, "aim": 0, "re0": -2, "re1": 2, "im0": -2, "im1": 2,
            "w": 24, "h": 20, "max_iter": 60})
        assert r.status_code == 200
        assert r.headers["content-type"] == "image/png"
        img = Image.open(io.BytesIO(r.content))
        assert img.size == (24, 20)

    def test_param_plane_png_deterministic(self, client):
        params = {"re0": 1.5, "re1": 4.0, "im0": -1, "im1": 1,
                  "w": 30, "h": 24, "max_iter": 60}
        r1 = client.get("/api/param-plane", params=params)
        r2 = client.get("/api/param-plane", params=params)
        assert r1.status_code == 200
        assert r1.content == r2.content

    def test_default_viewport_used(self, client):
        r = client.get("/api/param-plane", params={"w": 10, "h": 8, "max_iter": 40})
        assert r.status_code == 200

    def test_oversize_raster_422(self, client):
        r = client.get("/api/param-plane", params={"w": 5000, "h": 5000})
        assert r.status_code == 422

    def test_bad_viewport_400(self, client):
        r = client.get("/api/dyn-plane", params={
            "are": 1, "re0": 2, "re1": -2, "w": 8, "h": 8})
        assert r.status_code == 400

    def test_malformed_size_400(self, client):
        r = client.get("/api/param-plane", params={"w": "wide"})
        assert r.status_code == 400

    def test_cache_headers(self, client):
        r = client.get("/api/dyn-plane", params={"are": 1, "w": 8, "h": 8,
                                                 "max_iter": 40})
        assert "max-age" in r.headers.get("cache-control", "")
