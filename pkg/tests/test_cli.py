"""Tests for the command-line interface."""

import json

import numpy as np
import pytest

from peircelab import cli, jsonio

CSTAR2 = '{"kind": "cstar", "m": 2, "n": 2}'
JB2 = '{"kind": "jbstar", "m": 2, "n": 2}'


def _write_matrix(path, mat):
    path.write_text(json.dumps(jsonio.matrix_to_json(np.asarray(mat, dtype=complex))))
    return str(path)


def _run(capsys, argv):
    code = cli.main(argv)
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


class TestSpectralCommands:
    def test_range_tripotent(self, tmp_path, capsys):
        elem = _write_matrix(tmp_path / "x.json", [[0, 2], [0, 0]])
        code, doc = _run(capsys, ["range-tripotent", "--model", CSTAR2, "--element", elem])
        assert code == 0
        np.testing.assert_allclose(jsonio.matrix_from_json(doc), [[0, 1], [0, 0]], atol=1e-12)

    def test_spectrum(self, tmp_path, capsys):
        elem = _write_matrix(tmp_path / "x.json", np.diag([3.0, 1.0]))
        code, doc = _run(capsys, ["spectrum", "--model", CSTAR2, "--element", elem])
        assert code == 0
        assert doc == {"values": [1.0, 3.0], "includes_zero": False}

    def test_polar(self, tmp_path, capsys):
        elem = _write_matrix(tmp_path / "x.json", [[0, 2], [0, 0]])
        code, doc = _run(capsys, ["polar", "--model", CSTAR2, "--element", elem])
        assert code == 0
        np.testing.assert_allclose(jsonio.matrix_from_json(doc["isometry"]),
                                   [[0, 1], [0, 0]], atol=1e-12)
        np.testing.assert_allclose(jsonio.matrix_from_json(doc["modulus"]),
                                   np.diag([0.0, 2.0]), atol=1e-12)

    def test_ginv(self, tmp_path, capsys):
        elem = _write_matrix(tmp_path / "x.json", np.diag([2.0, 1.0]))
        code, doc = _run(capsys, ["ginv", "--model", CSTAR2, "--element", elem])
        assert code == 0
        np.testing.assert_allclose(jsonio.matrix_from_json(doc), np.diag([0.5, 1.0]),
                                   atol=1e-12)


class TestStructuralCommands:
    def test_peirce(self, tmp_path, capsys):
        elem = _write_matrix(tmp_path / "e.json", [[1, 0], [0, 0]])
        code, doc = _run(capsys, ["peirce", "--model", CSTAR2, "--tripotent", elem])
        assert code == 0
        assert len(doc["subspaces"]["S2"]) == 1
        assert len(doc["subspaces"]["S1"]) == 2
        assert len(doc["subspaces"]["S0"]) == 1
        assert doc["rules_residual"] <= 1e-9

    def test_annihilator_with_inferred_model(self, tmp_path, capsys):
        elem = _write_matrix(tmp_path / "e.json", [[1, 0], [0, 0]])
        code, doc = _run(capsys, ["annihilator", "--elements", elem])
        assert code == 0
        assert len(doc) == 1
        np.testing.assert_allclose(np.abs(jsonio.matrix_from_json(doc[0])),
                                   [[0, 0], [0, 1]], atol=1e-12)

    def test_witness_wor(self, tmp_path, capsys):
        elem = _write_matrix(tmp_path / "x.json", [[0, 1], [0, 0]])
        code, doc = _run(capsys, ["witness", "--kind", "wor", "--model", CSTAR2,
                                  "--element", elem])
        assert code == 0
        assert doc["verified"] is True
        np.testing.assert_allclose(jsonio.matrix_from_json(doc["witness"]),
                                   [[0, 1], [0, 0]], atol=1e-12)

    def test_witness_reversed_with_ideal(self, tmp_path, capsys):
        elem = _write_matrix(tmp_path / "x.json", [[0, 1], [0, 0]])
        ideal = tmp_path / "j.json"
        ideal.write_text("[]")
        code, doc = _run(capsys, ["witness", "--kind", "reversed", "--model", CSTAR2,
                                  "--family", elem, "--ideal", str(ideal)])
        assert code == 0
        assert doc["verified"] is True

    def test_witness_pedersen_seed_env(self, tmp_path, capsys, monkeypatch):
        monkeypatch.setenv("PEIRCELAB_SEED", "17")
        elem = _write_matrix(tmp_path / "b.json", np.diag([1.0, 0.0]))
        code, doc = _run(capsys, ["witness", "--kind", "pedersen", "--model", JB2,
                                  "--element", elem])
        assert code == 0
        assert doc["seed"] == 17
        assert doc["verified"] is True

    def test_approx_projections(self, tmp_path, capsys):
        elem = _write_matrix(tmp_path / "a.json", np.diag([0.3, 0.9]))
        code, doc = _run(capsys, ["approx", "--kind", "projections", "--model", JB2,
                                  "--element", elem, "--eps", "0.25"])
        assert code == 0
        assert doc["error"] <= 0.25
        assert len(doc["combo"]) == 2

    def test_approx_regular(self, tmp_path, capsys):
        elem = _write_matrix(tmp_path / "a.json", np.diag([1.0, 0.1]))
        code, doc = _run(capsys, ["approx", "--kind", "regular", "--model", JB2,
                                  "--element", elem, "--eps", "0.5"])
        assert code == 0
        assert doc["error"] == pytest.approx(0.1)
        np.testing.assert_allclose(jsonio.matrix_from_json(doc["y"]),
                                   np.diag([1.0, 0.0]), atol=1e-12)


class TestVerifyCommand:
    def test_verify_with_config(self, tmp_path, capsys):
        config = tmp_path / "config.json"
        config.write_text(json.dumps([
            {"name": "ternary-identity", "dims": [2], "trials": 3, "tol": 1e-9, "seed": 5},
            {"name": "peirce-partition", "dims": [2], "trials": 2, "tol": 1e-9, "seed": 5},
        ]))
        code, doc = _run(capsys, ["verify", "--config", str(config)])
        assert code == 0
        assert doc["pass"] is True
        assert set(doc["properties"]) == {"ternary-identity", "peirce-partition"}

    def test_verify_failure_exit_code(self, tmp_path, capsys):
        config = tmp_path / "config.json"
        config.write_text(json.dumps([
            {"name": "ternary-identity", "dims": [2], "trials": 1, "tol": 0.0, "seed": 5},
        ]))
        code, doc = _run(capsys, ["verify", "--config", str(config)])
        assert code == 1
        assert doc["pass"] is False

    def test_unknown_property_exit_code(self, tmp_path, capsys):
        config = tmp_path / "config.json"
        config.write_text(json.dumps([{"name": "no-such-thing"}]))
        code, _ = _run(capsys, ["verify", "--config", str(config)])
        assert code == 2


class TestErrorPaths:
    def test_malformed_matrix_is_input_error(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text('{"rows": 2, "cols": 2, "data": [[1.0, 0.0]]}')
        code, _ = _run(capsys, ["spectrum", "--model", CSTAR2, "--element", str(bad)])
        assert code == 2

    def test_shape_mismatch_is_input_error(self, tmp_path, capsys):
        elem = _write_matrix(tmp_path / "x.json", np.eye(3))
        code, _ = _run(capsys, ["spectrum", "--model", CSTAR2, "--element", str(elem)])
        assert code == 2

    def test_non_tripotent_is_input_error(self, tmp_path, capsys):
        elem = _write_matrix(tmp_path / "e.json", [[2, 0], [0, 0]])
        code, _ = _run(capsys, ["peirce", "--model", CSTAR2, "--tripotent", elem])
        assert code == 2

    def test_missing_file_is_input_error(self, capsys):
        code, _ = _run(capsys, ["spectrum", "--model", CSTAR2, "--element", "/no/such.json"])
        assert code == 2

    def test_out_file(self, tmp_path, capsys):
        elem = _write_matrix(tmp_path / "x.json", np.diag([3.0, 1.0]))
        target = tmp_path / "result.json"
        code = cli.main(["spectrum", "--model", CSTAR2, "--element", elem,
                         "--out", str(target)])
        assert code == 0
        assert capsys.readouterr().out == ""
        assert json.loads(target.read_text())["values"] == [1.0, 3.0]
