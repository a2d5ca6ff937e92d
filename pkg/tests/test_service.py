import pytest
from fastapi.testclient import TestClient

from radsum.service import create_app


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app(), raise_server_exceptions=False)


def test_health(client):
    resp = client.get("/api/health")
    assert resp.status_code == 200
    body = resp.json()
    assert body["status"] == "ok"


def test_count_endpoint(client):
    resp = client.post("/api/count", json={"j": 1, "k": 2, "w": "3"})
    assert resp.status_code == 200
    assert resp.json()["s"] == 11


def test_count_endpoint_conv_exp(client):
    resp = client.post("/api/count", json={"j": 1, "k": 2, "w": "7/2", "via_conv_exp": True})
    body = resp.json()
    assert body["s"] == body["s_conv_exp"] == 18
    assert body["consistent"] is True


def test_count_endpoint_validates_pair(client):
    resp = client.post("/api/count", json={"j": 2, "k": 4, "w": "3"})
    assert resp.status_code == 422


def test_count_endpoint_budget(client):
    resp = client.post("/api/count", json={"j": 1, "k": 3, "w": "20"})
    assert resp.status_code == 422
    assert "budget" in resp.json()["message"]


def test_staircase_endpoint_json_and_csv_agree(client):
    payload = {"j": 1, "k": 2, "w_max": "3", "step": "1/2"}
    as_json = client.post("/api/staircase", json=payload).json()
    as_csv = client.post("/api/staircase", params={"format": "csv"}, json=payload).text
    assert as_json["csv"] == as_csv
    assert as_csv.startswith("w,I_exact,I_first,I_center\n")


def test_staircase_endpoint_matches_cli_bytes(client, capsys):
    from radsum.cli import main

    payload = {"j": 1, "k": 2, "w_max": "4", "step": "1/4"}
    served = client.post("/api/staircase", params={"format": "csv"}, json=payload).text
    code = main(["staircase", "--j", "1", "--k", "2", "--w-max", "4", "--step", "1/4",
                 "--format", "csv"])
    assert code == 0
    assert capsys.readouterr().out == served


def test_estimate_endpoint(client):
    resp = client.post("/api/estimate-s", json={"j": 1, "k": 2, "w_max": "4", "step": "2"})
    assert resp.status_code == 200
    body = resp.json()
    assert body["header"] == ["w", "S_exact", "S_first", "S_center"]
    assert body["rows"][-1][0] == "4.0"
    assert body["rows"][-1][1] == "28.0"


def test_zeros_validate_endpoint(client):
    resp = client.post("/api/zeros/validate", json={"zeros_text": "14.134725141734694\n"})
    assert resp.status_code == 200
    assert resp.json()["count"] == 1

    bad = client.post("/api/zeros/validate", json={"zeros_text": "10.0\n"})
    assert bad.status_code == 422


def test_verify_endpoint_single(client):
    resp = client.post("/api/verify", json={"only": "first-order-15"})
    assert resp.status_code == 200
    body = resp.json()
    assert body["all_passed"] is True
    assert body["checks"][0]["name"] == "first-order-15"
