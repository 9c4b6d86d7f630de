import json
import math

import pytest


class TestHealth:
    def test_ok(self, client):
        resp = client.get("/health")
        assert resp.status_code == 200
        assert resp.json()["status"] == "ok"


class TestRep2Endpoint:
    def test_family_only(self, client):
        resp = client.post("/rep2", json={"b": 1.0, "c": -1.0})
        assert resp.status_code == 200
        body = json.loads(resp.text)
        assert body["command"] == "rep2"
        assert body["pass"] is True
        assert body["results"]["a"] == 1.0
        assert body["results"]["eta"] == [[[1.0, 0.0], [1.0, 0.0]], [[-1.0, 0.0], [-1.0, 0.0]]]

    def test_with_hamiltonian(self, client):
        resp = client.post(
            "/rep2",
            json={"b": 1.0, "c": -1.0, "alpha": 0.0, "beta": 4.0, "gamma": 1.0},
        )
        body = json.loads(resp.text)
        assert body["pass"] is True
        assert body["results"]["phase"] == "unbroken"
        assert body["results"]["eigenvalues"][0] == [2.0, 0.0]
        assert "k_commutes_with_hamiltonian" in body["residuals"]

    def test_broken_phase_has_no_k(self, client):
        resp = client.post(
            "/rep2",
            json={"b": 1.0, "c": -1.0, "alpha": 0.0, "beta": 1.0, "gamma": -1.0},
        )
        body = json.loads(resp.text)
        assert body["results"]["phase"] == "broken"
        assert "c_matrix" not in body["results"]
        # self norms vanish pairwise in the broken phase: diagnostic only
        norms = body["results"]["pt_norms"]
        assert norms[0] == [0.0, 0.0] and norms[1] == [0.0, 0.0]
        assert "pt_norms" not in body["residuals"]

    def test_partial_hamiltonian_rejected(self, client):
        resp = client.post("/rep2", json={"b": 1.0, "c": -1.0, "alpha": 0.5})
        assert resp.status_code == 422

    def test_invalid_family_is_400(self, client):
        resp = client.post("/rep2", json={"b": 1.0, "c": 1.0})
        assert resp.status_code == 400
        assert "nonpositive" in resp.json()["detail"]

    def test_schema_violation_is_422(self, client):
        resp = client.post("/rep2", json={"b": 1.0})
        assert resp.status_code == 422

    def test_unknown_field_rejected(self, client):
        resp = client.post("/rep2", json={"b": 1.0, "c": -1.0, "bogus": 3})
        assert resp.status_code == 422


class TestRep4Endpoint:
    def test_twelve_family_complex_strings(self, client):
        resp = client.post(
            "/rep4",
            json={
                "family": "rep4-12",
                "a": "1",
                "b": "i",
                "c": "-i",
                "f": "1",
                "g4": "i",
                "h": "-i",
            },
        )
        assert resp.status_code == 200
        body = json.loads(resp.text)
        assert body["pass"] is True
        assert body["results"]["grassmann_relations_hold"] is True
        assert body["residuals"]["grassmann_anticommutator_vanishes"] == 0.0
        assert body["results"]["eta"][0] == [[1.0, 0.0], [1.0, 0.0], [0.0, 1.0], [0.0, -1.0]]

    def test_block_family_with_k(self, client):
        resp = client.post(
            "/rep4",
            json={
                "family": "rep4-block",
                "b": "1",
                "c": "0",
                "alpha": 1.0,
                "beta4": -1.0,
                "gamma": 1.0,
            },
        )
        assert resp.status_code == 200
        body = json.loads(resp.text)
        assert body["pass"] is True
        assert body["results"]["f"] == 1.0
        assert body["results"]["g"] == pytest.approx(math.sqrt(2.0))
        assert "cpt_anticommutator_closed_form" in body["residuals"]

    def test_block_family_invalid_sign_combination(self, client):
        resp = client.post(
            "/rep4",
            json={
                "family": "rep4-block",
                "b": "1",
                "c": "0",
                "alpha": 1.0,
                "beta4": 1.0,
            },
        )
        assert resp.status_code == 400

    def test_bad_complex_string(self, client):
        resp = client.post(
            "/rep4",
            json={"family": "rep4-12", "a": "1+?i"},
        )
        assert resp.status_code == 422


class TestVerifyEndpoint:
    def test_json_report(self, client):
        resp = client.post(
            "/verify", json={"family": "rep2", "trials": 50, "seed": 7}
        )
        assert resp.status_code == 200
        assert resp.headers["x-report-pass"] == "true"
        body = json.loads(resp.text)
        assert body["pass"] is True
        names = [row["name"] for row in body["results"]["identities"]]
        assert "pt_anticommutator_closed_form" in names

    def test_byte_identical_reruns(self, client):
        payload = {"family": "rep4-block", "trials": 40, "seed": 3}
        a = client.post("/verify", json=payload)
        b = client.post("/verify", json=payload)
        assert a.content == b.content

    def test_csv_format(self, client):
        resp = client.post(
            "/verify",
            params={"format": "csv"},
            json={"family": "rep2", "trials": 20, "seed": 0},
        )
        assert resp.status_code == 200
        assert resp.headers["content-type"].startswith("text/csv")
        lines = resp.text.strip().splitlines()
        assert lines[0] == "identity,max_residual,tolerance,pass"
        assert all(line.count(",") == 3 for line in lines)

    def test_failing_tolerance_sets_header(self, client):
        resp = client.post(
            "/verify", json={"family": "rep2", "trials": 20, "seed": 0, "tolerance": 1e-18}
        )
        assert resp.headers["x-report-pass"] == "false"
        assert json.loads(resp.text)["pass"] is False


class TestLeeSpectrumEndpoint:
    def test_canonical(self, client):
        resp = client.post(
            "/lee/spectrum", json={"m": 1.0, "M": 1.0, "g": 0.5, "nmax": 64}
        )
        assert resp.status_code == 200
        body = json.loads(resp.text)
        assert body["pass"] is True
        row0 = body["results"]["levels"][0]
        assert row0["exact"] == 0.75
        assert row0["abs_err"] < 1e-8
        assert body["results"]["renormalized_mass"] == 0.75

    def test_csv_rows(self, client):
        resp = client.post(
            "/lee/spectrum",
            params={"format": "csv"},
            json={"m": 1.0, "M": 1.0, "g": 0.5, "nmax": 8},
        )
        lines = resp.text.strip().splitlines()
        assert lines[0] == "N,truncated,exact,abs_err"
        first = lines[1].split(",")
        assert first[0] == "0"
        assert float(first[2]) == 0.75

    def test_invalid_mass_rejected(self, client):
        resp = client.post(
            "/lee/spectrum", json={"m": -1.0, "M": 1.0, "g": 0.5, "nmax": 8}
        )
        assert resp.status_code == 422


class TestLeeCoeffsEndpoint:
    def test_both_routes_agree(self, client):
        resp = client.post(
            "/lee/coeffs",
            json={"m": 1.0, "M": 1.0, "g": 0.5, "N": 2, "terms": 20, "route": "both"},
        )
        body = json.loads(resp.text)
        assert body["pass"] is True
        assert body["results"]["max_rel_diff"] <= 1e-10
        assert len(body["results"]["recursion"]) == 20
        assert body["results"]["recursion"] == body["results"]["genfunc"]

    def test_single_route(self, client):
        resp = client.post(
            "/lee/coeffs",
            json={"m": 1.0, "M": 1.0, "g": 0.5, "N": 0, "terms": 6, "route": "genfunc"},
        )
        body = json.loads(resp.text)
        assert "recursion" not in body["results"]
        assert body["results"]["genfunc"][1] == -0.5

    def test_zero_coupling_recursion_rejected(self, client):
        resp = client.post(
            "/lee/coeffs",
            json={"m": 1.0, "M": 1.0, "g": 0.0, "N": 0, "terms": 6, "route": "recursion"},
        )
        assert resp.status_code == 400


class TestLeeConvergeEndpoint:
    def test_balance_classification(self, client):
        resp = client.post(
            "/lee/converge",
            json={"m": 1.0, "M": 1.0, "g": 0.5, "N": 0, "terms": 24, "offset": 0.3},
        )
        body = json.loads(resp.text)
        assert body["pass"] is True
        assert body["results"]["balance_at_level"] == "normalizable"
        assert body["results"]["balance_at_offset"] == "non-normalizable"
        assert body["results"]["norm_at_level"]["diverged"] is False
        level_norm = body["results"]["norm_at_level"]
        assert abs(level_norm["last_increment"]) < 1e-12
        offset_norm = body["results"]["norm_at_offset"]
        assert offset_norm["diverged"] or offset_norm["last_increment"] > 1.0


class TestCsvAvailability:
    def test_non_tabular_command_rejects_csv(self, client):
        resp = client.post(
            "/lee/converge",
            params={"format": "csv"},
            json={"m": 1.0, "M": 1.0, "g": 0.5, "N": 0, "terms": 24},
        )
        assert resp.status_code == 400
        assert "csv" in resp.json()["detail"]


class TestDeterministicSerialization:
    def test_17_digit_floats(self, client):
        resp = client.post(
            "/lee/coeffs",
            json={"m": 1.0, "M": 1.0, "g": 0.1, "N": 0, "terms": 3, "route": "genfunc"},
        )
        # -g/m = -0.1 must round-trip exactly through the payload
        body = json.loads(resp.text)
        assert body["results"]["genfunc"][1] == -0.1
        assert "-0.10000000000000001" in resp.text
