import pytest
from fastapi.testclient import TestClient

from mirrorcavity.service import create_app

from conftest import rel_err


@pytest.fixture(scope="module")
def client():
    with TestClient(create_app()) as c:
        yield c


def _csv_data_rows(csv_text: str) -> list[str]:
    lines = [line for line in csv_text.strip().splitlines() if not line.startswith("#")]
    return lines[1:]  # drop the column header


class TestHealth:
    def test_health(self, client):
        response = client.get("/health")
        assert response.status_code == 200
        assert response.json()["status"] == "ok"


class TestSpectrumEndpoint:
    def test_default_parameters(self, client):
        response = client.post("/spectrum", json={})
        assert response.status_code == 200
        body = response.json()
        assert body["command"] == "spectrum"
        assert body["scalars"]["n_max"] == 106
        assert body["scalars"]["N_osc"] > 0
        rows = _csv_data_rows(body["csv"])
        assert len(rows) == 106
        assert body["csv"].startswith("# L0_m = ")
        header = [line for line in body["csv"].splitlines() if not line.startswith("#")][0]
        assert header == "mode_index,omega_rad_s,photon_number"

    def test_repeat_is_identical(self, client):
        first = client.post("/spectrum", json={}).json()["csv"]
        second = client.post("/spectrum", json={}).json()["csv"]
        assert first == second

    def test_domain_error_maps_to_400(self, client):
        response = client.post(
            "/spectrum", json={"params": {"L0_m": 1e-9, "omega_cut": 1e10}}
        )
        assert response.status_code == 400
        assert "omega_cut" in response.json()["detail"]

    def test_validation_error_maps_to_422(self, client):
        response = client.post("/spectrum", json={"params": {"M_kg": -1.0}})
        assert response.status_code == 422


class TestBudgetEndpoint:
    def test_identities_from_scalars(self, client):
        body = client.post("/budget", json={}).json()
        s = body["scalars"]
        assert s["E2_J"] < 0
        assert rel_err(s["E2_J"], s["H0_J"] + s["Hint_J"]) <= 1e-12
        assert rel_err(s["Hint_J"], -2.0 * s["H0_J"]) <= 1e-12
        rows = _csv_data_rows(body["csv"])
        assert len(rows) == 1


class TestForceEndpoint:
    def test_reports_forces(self, client):
        body = client.post("/force", json={}).json()
        assert body["scalars"]["fixed_wall_force_N"] == pytest.approx(-4.14e-17, rel=2e-3)
        assert body["warnings"] == []

    def test_strict_cutoff_crossing_is_400(self, client):
        L0_cross = 10e-6 * (106.999 / 106.17705474472258)
        payload = {"params": {"L0_m": L0_cross}, "strict": True}
        response = client.post("/force", json=payload)
        assert response.status_code == 400
        assert "mode count changes" in response.json()["detail"]

    def test_nonstrict_cutoff_crossing_warns(self, client):
        L0_cross = 10e-6 * (106.999 / 106.17705474472258)
        body = client.post("/force", json={"params": {"L0_m": L0_cross}}).json()
        assert len(body["warnings"]) == 1


class TestDensityEndpoint:
    def test_profile(self, client):
        body = client.post("/density", json={"grid_size": 41}).json()
        rows = _csv_data_rows(body["csv"])
        assert len(rows) == 41
        assert body["scalars"]["delta_at_wall_J_per_m"] > 0
        assert body["scalars"]["baseline_J_per_m"] == pytest.approx(-4.14e-17, rel=2e-3)
        header = [line for line in body["csv"].splitlines() if not line.startswith("#")][0]
        assert header == "x_m,baseline_J_per_m,delta_J_per_m,total_J_per_m"

    def test_workers_do_not_change_bytes(self, client):
        one = client.post("/density", json={"grid_size": 130, "workers": 1}).json()["csv"]
        four = client.post("/density", json={"grid_size": 130, "workers": 4}).json()["csv"]
        assert one == four


class TestSweepEndpoint:
    def test_spectrum_sweep_matches_figure_ordering(self, client):
        payload = {"axis": "omega_osc", "values": [5e4, 1e5, 5e5]}
        body = client.post("/sweep", json=payload).json()
        rows = [line.split(",") for line in _csv_data_rows(body["csv"])]
        assert len(rows) == 3 * 106
        by_axis = {}
        for axis_value, mode, _, number in rows:
            by_axis.setdefault(float(axis_value), {})[int(mode)] = float(number)
        for mode in (1, 50, 106):
            assert by_axis[5e4][mode] > by_axis[1e5][mode] > by_axis[5e5][mode]

    def test_single_value_sweep_matches_single_run(self, client):
        sweep_csv = client.post("/sweep", json={"axis": "omega_cut", "values": [1e16]}).json()["csv"]
        single_csv = client.post("/spectrum", json={}).json()["csv"]
        sweep_rows = [line.split(",", 1)[1] for line in _csv_data_rows(sweep_csv)]
        single_rows = _csv_data_rows(single_csv)
        assert sweep_rows == single_rows

    def test_unsorted_values_rejected(self, client):
        response = client.post("/sweep", json={"axis": "M", "values": [2.0, 1.0]})
        assert response.status_code == 400
        assert "strictly increasing" in response.json()["detail"]

    def test_nonpositive_values_rejected(self, client):
        response = client.post("/sweep", json={"axis": "M", "values": [-1.0, 1.0]})
        assert response.status_code == 400

    def test_density_sweep(self, client):
        payload = {
            "axis": "omega_cut",
            "values": [5e15, 1e16],
            "target": "density",
            "grid_size": 11,
        }
        body = client.post("/sweep", json=payload).json()
        rows = [line.split(",") for line in _csv_data_rows(body["csv"])]
        assert len(rows) == 22
        wall = {float(r[0]): float(r[3]) for r in rows if float(r[1]) == 10e-6}
        assert wall[1e16] > wall[5e15]


class TestOracleEndpoint:
    def test_ratio_approaches_one(self, client):
        body = client.post("/oracle-check", json={}).json()
        rows = [line.split(",") for line in _csv_data_rows(body["csv"])]
        assert len(rows) == 3
        ratios = [abs(float(r[3]) - 1.0) for r in rows]  # ladder is descending in lambda
        assert ratios[-1] < ratios[0]
        assert abs(float(rows[-1][3]) - 1.0) < 1e-3
        for r in rows:
            assert float(r[4]) >= 0.0  # truncation estimate

    def test_bad_lambda_rejected(self, client):
        response = client.post("/oracle-check", json={"lambdas": [0.0]})
        assert response.status_code == 400
