import math

import httpx
import pytest

from charged3body.service import CSV_CURVE_HEADER, CSV_REGION_HEADER, app


@pytest.fixture(scope="module")
def client():
    transport = httpx.ASGITransport(app=app)

    class Sync:
        def post(self, path, json):
            import asyncio

            async def go():
                async with httpx.AsyncClient(
                    transport=transport, base_url="http://t", timeout=None
                ) as ac:
                    return await ac.post(path, json=json)

            return asyncio.run(go())

        def get(self, path):
            import asyncio

            async def go():
                async with httpx.AsyncClient(
                    transport=transport, base_url="http://t", timeout=None
                ) as ac:
                    return await ac.get(path)

            return asyncio.run(go())

    return Sync()


class TestRootsEndpoint:
    def test_anchor(self, client):
        r = client.post("/api/roots", json={"beta": [1, 1]})
        assert r.status_code == 200
        d = r.json()
        assert d["triple"] == [0, 0, 1]
        assert d["region"] == 1
        assert d["coefficients"] == [-2, -5, -4, 4, 5, 2]
        root = d["roots"][0]
        assert abs(root["u"] - 1) < 1e-12
        assert root["interval"] == "I3"
        assert root["u_sign"] == "-"
        cc = root["central_configuration"]
        assert cc["multiplier"] == pytest.approx(1.25, rel=1e-9)
        assert cc["residual"] <= 1e-9

    def test_gravitational(self, client):
        r = client.post("/api/roots", json={"gravitational": True, "m": [1, 1, 1]})
        d = r.json()
        assert d["triple"] == [0, 0, 1]
        assert abs(d["roots"][0]["u"] - 1) < 1e-12

    def test_all_zero_is_409(self, client):
        r = client.post("/api/roots", json={"alpha": [0, 0, 0]})
        assert r.status_code == 409
        assert r.json()["error"]["kind"] == "all-zero"

    def test_collision_degenerate_is_409(self, client):
        r = client.post("/api/roots", json={"alpha": [1, 0, 1]})
        assert r.status_code == 409
        assert r.json()["error"]["kind"] == "degenerate-at-collision"

    def test_bad_selector_is_422(self, client):
        r = client.post("/api/roots", json={"alpha": [1, 1, 1], "beta": [1, 1]})
        assert r.status_code == 422

    def test_float_near_discriminant_resolves_split_pair(self, client):
        # the JSON float approximation of a fold-curve point is off the curve
        # by ~1e-17, so the double root truly splits into a certified pair
        # ~1e-8 apart; exact rational inputs on the curve raise instead
        r = client.post("/api/roots", json={"beta": [-13 / 621, 4 / 621]})
        assert r.status_code == 200
        d = r.json()
        near_two = [x for x in d["roots"] if abs(x["u"] - 2) < 1e-6]
        assert len(near_two) == 2
        assert all(x["multiplicity"] == 1 for x in near_two)
        assert near_two[0]["enclosure"][1] <= near_two[1]["enclosure"][0]

    def test_raw_alpha_zero_third_coupling(self, client):
        # a3 = 0 makes u = -1 (the 1-2 collision) an exact root of the
        # reduced polynomial, so isolation reports the degeneracy
        r = client.post("/api/roots", json={"alpha": [2, 1, 0]})
        assert r.status_code == 409
        assert r.json()["error"]["kind"] == "degenerate-at-collision"


class TestRegionsEndpoint:
    def test_small_grid_csv_schema(self, client):
        r = client.post(
            "/api/regions",
            json={"grid": {"b1_min": 0.9, "b1_max": 1.1, "n1": 3, "b2_min": 0.9, "b2_max": 1.1, "n2": 3}},
        )
        d = r.json()
        lines = d["csv"].splitlines()
        assert lines[0] == CSV_REGION_HEADER
        assert len(lines) == 10
        assert d["distinct_triples"] == [[0, 0, 1]]
        assert d["boundary_cells"] == 0

    def test_axis_cells_boundary(self, client):
        # the middle cell sits exactly on the vertical axis; the two side
        # cells land in the big quadrant regions (the thin fold wedge between
        # the axis and the curve is narrower than this grid step)
        r = client.post(
            "/api/regions",
            json={"grid": {"b1_min": -0.1, "b1_max": 0.1, "n1": 3, "b2_min": 2.0, "b2_max": 2.0, "n2": 1}},
        )
        d = r.json()
        rows = [ln.split(",") for ln in d["csv"].splitlines()[1:]]
        assert [row[5] for row in rows] == ["3", "B", "1"]

    def test_grid_straddling_horizontal_axis(self, client):
        # cells on opposite sides of the beta2 = 0 line differ by exactly one
        # in both n2 and n3 (double zero at u = 0 splitting)
        r = client.post(
            "/api/regions",
            json={"grid": {"b1_min": -15.0, "b1_max": -15.0, "n1": 1, "b2_min": -0.01, "b2_max": 0.01, "n2": 2}},
        )
        rows = [ln.split(",") for ln in r.json()["csv"].splitlines()[1:]]
        below = tuple(int(x) for x in rows[0][2:5])
        above = tuple(int(x) for x in rows[1][2:5])
        assert abs(below[1] - above[1]) == 1
        assert abs(below[2] - above[2]) == 1
        assert below[0] == above[0]

    def test_determinism(self, client):
        payload = {
            "grid": {"b1_min": -1, "b1_max": 1, "n1": 5, "b2_min": -1, "b2_max": 1, "n2": 5},
            "include_svg": True,
        }
        a = client.post("/api/regions", json=payload).json()
        b = client.post("/api/regions", json=payload).json()
        assert a["csv"] == b["csv"]
        assert a["svg"] == b["svg"]

    def test_svg_wellformed_with_distinct_palette(self, client):
        import xml.etree.ElementTree as ET

        from charged3body.svgplot import PALETTE

        r = client.post(
            "/api/regions",
            json={
                "grid": {"b1_min": -2, "b1_max": 2, "n1": 9, "b2_min": -2, "b2_max": 2, "n2": 9},
                "include_svg": True,
            },
        )
        svg = r.json()["svg"]
        root = ET.fromstring(svg)
        assert root.tag.endswith("svg")
        colors = [PALETTE[str(k)] for k in range(1, 14)]
        assert len(set(colors)) == 13


class TestCurveEndpoint:
    def test_csv_and_metadata(self, client):
        r = client.post("/api/curve", json={"mu": 1.0, "samples": 60})
        d = r.json()
        lines = d["csv"].splitlines()
        assert lines[0] == CSV_CURVE_HEADER
        assert d["samples"] == len(lines) - 1
        assert sorted(round(c, 6) for c in d["cusps"]) == [-2.0, -0.5, 1.0]
        flags = {ln.split(",")[4] for ln in lines[1:]}
        assert flags == {"0", "1"}

    def test_at_infinity_rows_near_xi(self, client):
        r = client.post("/api/curve", json={"mu": 1.0, "samples": 60})
        lines = r.json()["csv"].splitlines()[1:]
        xi_p = (-13 + math.sqrt(105)) / 8
        inf_rows = [ln for ln in lines if ln.split(",")[4] == "1"]
        assert any(abs(float(ln.split(",")[0]) - xi_p) < 1e-9 for ln in inf_rows)

    def test_mass_choice_validation(self, client):
        assert client.post("/api/curve", json={}).status_code == 422
        assert client.post("/api/curve", json={"mu": 1.0, "m": [1, 1, 1]}).status_code == 422

    def test_curve_deterministic(self, client):
        a = client.post("/api/curve", json={"mu": 2.0, "samples": 50}).json()
        b = client.post("/api/curve", json={"mu": 2.0, "samples": 50}).json()
        assert a["csv"] == b["csv"]


class TestSpecialPointsEndpoint:
    def test_mu_one(self, client):
        d = client.post("/api/special-points", json={"mu": 1}).json()
        assert d["eta_plus"] == pytest.approx(-0.5)
        assert d["eta_minus"] == pytest.approx(-2.0)
        assert d["xi_product"] == pytest.approx(1.0, abs=1e-12)
        assert d["eta_product"] == pytest.approx(1.0, abs=1e-12)
        assert d["ordering_ok"] is True
        assert d["residual_g3_at_xi"] <= 1e-9
        assert d["residual_curve_derivative_at_eta"] <= 1e-9

    def test_mu_zero_rejected(self, client):
        assert client.post("/api/special-points", json={"mu": 0}).status_code == 422


class TestReleqEndpoint:
    def test_euler_point(self, client):
        d = client.post("/api/releq", json={"beta": [1, 1], "u": 1.0}).json()
        assert d["classification"] == "relative-equilibrium"
        assert d["rank"] < 10
        assert d["rank_gap"] < 1e-9
        assert max(abs(x) for x in d["total_momentum"]) <= 1e-15
        assert d["center_of_mass"][0] == pytest.approx(0, abs=1e-15)
        # I = 1 gauge
        import numpy as np

        q = np.array(d["positions"])
        assert float((q**2).sum()) == pytest.approx(1.0, rel=1e-9)

    def test_gravitational_lagrange(self, client):
        d = client.post(
            "/api/releq", json={"gravitational": True, "noncollinear": True}
        ).json()
        assert d["classification"] == "relative-equilibrium"
        assert d["rank_gap"] < 1e-9
        assert d["multiplier"] > 0

    def test_repulsive_noncollinear_rejected(self, client):
        r = client.post(
            "/api/releq",
            json={"alpha": [-1, -1, -1], "noncollinear": True},
        )
        assert r.status_code == 409
        assert r.json()["error"]["kind"] == "nonpositive-multiplier"

    def test_no_such_root(self, client):
        r = client.post("/api/releq", json={"beta": [1, 1], "u": 3.5})
        assert r.status_code == 400
        assert r.json()["error"]["kind"] == "no-such-root"


class TestRemoteServer:
    def test_http_roundtrip_with_running_server(self):
        # the client's remote mode against a real uvicorn instance
        import socket
        import threading
        import time

        import uvicorn

        from charged3body.client import ServiceClient, ServiceError

        sock = socket.socket()
        sock.bind(("127.0.0.1", 0))
        port = sock.getsockname()[1]
        sock.close()
        config = uvicorn.Config(app, host="127.0.0.1", port=port, log_level="error")
        server = uvicorn.Server(config)
        thread = threading.Thread(target=server.run, daemon=True)
        thread.start()
        try:
            for _ in range(200):
                if server.started:
                    break
                time.sleep(0.05)
            assert server.started, "uvicorn failed to start"
            with ServiceClient(f"http://127.0.0.1:{port}") as c:
                d = c.post("/api/roots", {"beta": [1, 1]})
                assert d["region"] == 1
                with pytest.raises(ServiceError) as exc:
                    c.post("/api/roots", {"alpha": [0, 0, 0]})
                assert exc.value.kind == "all-zero"
                assert exc.value.exit_code == 3
        finally:
            server.should_exit = True
            thread.join(timeout=10)


class TestVerifyEndpoint:
    def test_small_run_passes(self, client):
        d = client.post("/api/verify", json={"seed": 5, "iterations": 8}).json()
        assert d["passed"] is True
        assert len(d["suites"]) == 6

    def test_zero_iterations_vacuous(self, client):
        d = client.post("/api/verify", json={"seed": 5, "iterations": 0}).json()
        assert d["passed"] is True
        assert d["suites"] == []
        assert d["lines"] == []

    def test_health(self, client):
        assert client.get("/api/health").json() == {"status": "ok"}
