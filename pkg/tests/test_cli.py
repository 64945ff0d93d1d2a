import json
import os
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from schurblock import (
    block_identity,
    block_matrix_to_json,
    triple_dim,
)
from schurblock.cli import (
    ConfigError,
    TrialConfig,
    emit_system_dict,
    replay_instance,
    report_to_csv,
    report_to_json,
    run_suite,
)

SRC = str(Path(__file__).resolve().parent.parent / "src")
GOLDEN = Path(__file__).resolve().parent / "golden" / "report_skeleton.json"


def run_cli(*args, env_extra=None):
    env = dict(os.environ)
    env["PYTHONPATH"] = SRC + os.pathsep + env.get("PYTHONPATH", "")
    if env_extra:
        env.update(env_extra)
    return subprocess.run(
        [sys.executable, "-m", "schurblock", *args],
        capture_output=True, text=True, env=env,
    )


def small_config(**overrides):
    base = dict(n=2, d=1, k=1, trials=3, seed=11,
                properties=("factorization", "livshits", "cb_level"))
    base.update(overrides)
    return TrialConfig(**base)


def identity_instance(tmp_path, name="inst.json"):
    i = block_identity(2, 1)
    payload = {"A": block_matrix_to_json(i), "B": block_matrix_to_json(i)}
    path = tmp_path / name
    path.write_text(json.dumps(payload))
    return path


def strip_timing(report_text):
    obj = json.loads(report_text)
    for r in obj["results"]:
        r.pop("seconds")
    return json.dumps(obj, sort_keys=True)


class TestTrialConfig:
    def test_ranges(self):
        with pytest.raises(ConfigError):
            TrialConfig(n=0)
        with pytest.raises(ConfigError):
            TrialConfig(n=9)
        with pytest.raises(ConfigError):
            TrialConfig(d=5)
        with pytest.raises(ConfigError):
            TrialConfig(k=4)
        with pytest.raises(ConfigError):
            TrialConfig(trials=-1)
        with pytest.raises(ConfigError):
            TrialConfig(seed=2**64)

    def test_unknown_property_rejected(self):
        with pytest.raises(ConfigError, match="unknown property"):
            TrialConfig(properties=("factorization", "bogus"))
        with pytest.raises(ConfigError, match="unknown property"):
            TrialConfig(tolerances={"bogus": 1e-8})

    def test_unknown_ensemble_rejected(self):
        with pytest.raises(ConfigError):
            TrialConfig(ensemble="levy")


class TestRunSuite:
    def test_zero_trials_vacuous_pass(self):
        report = run_suite(small_config(trials=0))
        assert report.results == []
        assert report.passed

    def test_deterministic_reports(self):
        r1 = run_suite(small_config())
        r2 = run_suite(small_config())
        assert strip_timing(report_to_json(r1)) == strip_timing(report_to_json(r2))

    def test_small_suite_passes(self):
        report = run_suite(TrialConfig(n=3, d=2, k=2, trials=5, seed=3))
        assert report.passed
        assert {r.property_id for r in report.results} == set(
            TrialConfig().properties)
        for r in report.results:
            assert r.trials == 5

    def test_all_ensembles(self):
        for ensemble in ("ginibre", "hermitian", "haar"):
            report = run_suite(small_config(ensemble=ensemble, trials=2))
            assert report.passed, ensemble

    def test_csv_has_one_row_per_property(self):
        report = run_suite(small_config())
        lines = report_to_csv(report).strip().splitlines()
        assert len(lines) == 1 + 3
        assert lines[0].startswith("property_id,")


class TestReplay:
    def test_identity_pair_factorization(self, tmp_path):
        result = replay_instance(str(identity_instance(tmp_path)), "factorization")
        assert result.worst_residual == 0.0

    def test_livshits_hand_pair(self, tmp_path):
        def enc(m):
            return {"n": 2, "d": 1,
                    "blocks": [[[[[float(m[i][j]), 0.0]]] for j in range(2)]
                               for i in range(2)]}
        payload = {"A": enc([[1, 2], [3, 4]]), "B": enc([[5, 6], [7, 8]])}
        path = tmp_path / "pair.json"
        path.write_text(json.dumps(payload))
        result = replay_instance(str(path), "livshits")
        assert result.passed

    def test_with_vectors(self, tmp_path):
        i = block_identity(2, 1)
        payload = {
            "A": block_matrix_to_json(i), "B": block_matrix_to_json(i),
            "xi": [[1.0, 0.0], [0.0, 0.0]], "gamma": [[1.0, 0.0], [0.0, 0.0]],
        }
        path = tmp_path / "vec.json"
        path.write_text(json.dumps(payload))
        result = replay_instance(str(path), "cauchy_schwarz")
        assert result.passed and result.worst_residual == 0.0

    def test_cb_level_falls_back_to_k1(self, tmp_path):
        result = replay_instance(str(identity_instance(tmp_path)), "cb_level")
        assert result.passed
        assert result.worst_residual == 1.0  # I [] I = I saturates the bound

    def test_missing_field(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({"A": {"n": 1, "d": 1}}))
        with pytest.raises(ValueError, match="missing field"):
            replay_instance(str(path), "factorization")


class TestEmitSystem:
    def test_contains_exact_operators(self, tmp_path):
        out = emit_system_dict(2, 1)
        assert set(out) == {"n", "d", "V", "F", "Q"}
        v = np.array(out["V"])[:, :, 0]
        assert np.array_equal(v, [[1, 0], [0, 0], [0, 0], [0, 1]])
        assert len(out["F"]) == triple_dim(2, 1)

    def test_with_instance(self, tmp_path):
        path = identity_instance(tmp_path)
        out = emit_system_dict(2, 1, str(path))
        assert np.array_equal(np.array(out["lambda_A"])[:, :, 0], np.eye(4))


class TestCommandLine:
    def test_verify_exit_zero_and_determinism(self):
        args = ("verify", "--n", "2", "--d", "1", "--k", "1",
                "--trials", "3", "--seed", "11")
        p1 = run_cli(*args)
        p2 = run_cli(*args)
        assert p1.returncode == 0, p1.stderr
        assert strip_timing(p1.stdout) == strip_timing(p2.stdout)

    def test_verify_failure_exit_code(self):
        # zero tolerance turns rounding into a reported failure
        p = run_cli("verify", "--n", "2", "--d", "2", "--k", "1",
                    "--trials", "2", "--seed", "1",
                    "--properties", "factorization", "--tol.factorization", "0")
        assert p.returncode == 1
        assert json.loads(p.stdout)["pass"] is False

    def test_config_error_exit_code(self):
        p = run_cli("verify", "--n", "99", "--trials", "1")
        assert p.returncode == 2
        assert "n must be" in p.stderr

    def test_unknown_property_exit_code(self):
        p = run_cli("verify", "--properties", "bogus", "--trials", "1")
        assert p.returncode == 2

    def test_parse_error_exit_code(self, tmp_path):
        bad = tmp_path / "corrupt.json"
        bad.write_text('{"A": [1, 2')
        p = run_cli("replay", str(bad), "--property", "factorization")
        assert p.returncode == 3
        assert "line" in p.stderr

    def test_missing_file_exit_code(self, tmp_path):
        p = run_cli("replay", str(tmp_path / "nope.json"),
                    "--property", "factorization")
        assert p.returncode == 3

    def test_replay_pass_output(self, tmp_path):
        path = identity_instance(tmp_path)
        p = run_cli("replay", str(path), "--property", "factorization")
        assert p.returncode == 0
        assert "result=PASS" in p.stdout

    def test_env_seed_override(self):
        p = run_cli("verify", "--n", "2", "--d", "1", "--trials", "1",
                    "--seed", "5", env_extra={"SCHURBLOCK_SEED": "77"})
        assert json.loads(p.stdout)["config"]["seed"] == 77

    def test_csv_format(self):
        p = run_cli("verify", "--n", "2", "--d", "1", "--k", "1", "--trials", "2",
                    "--properties", "livshits", "--format", "csv")
        assert p.returncode == 0
        lines = p.stdout.strip().splitlines()
        assert lines[0].startswith("property_id,")
        assert lines[1].startswith("livshits,")

    def test_out_file(self, tmp_path):
        out = tmp_path / "report.json"
        p = run_cli("verify", "--n", "2", "--d", "1", "--trials", "1",
                    "--out", str(out))
        assert p.returncode == 0
        assert json.loads(out.read_text())["pass"] is True

    def test_emit_system_cli(self, tmp_path):
        p = run_cli("emit-system", "--n", "2", "--d", "1")
        assert p.returncode == 0
        assert set(json.loads(p.stdout)) == {"F", "Q", "V", "d", "n"}


class TestGoldenSchema:
    def test_report_schema_is_pinned(self):
        report = run_suite(small_config())
        actual = json.loads(report_to_json(report))
        golden = json.loads(GOLDEN.read_text())
        _assert_same_schema(golden, actual, path="report")


def _assert_same_schema(golden, actual, path):
    assert type(golden) is type(actual), f"{path}: {type(golden)} != {type(actual)}"
    if isinstance(golden, dict):
        assert set(golden) == set(actual), f"{path}: keys differ"
        for key in golden:
            _assert_same_schema(golden[key], actual[key], f"{path}.{key}")
    elif isinstance(golden, list):
        assert len(golden) == len(actual), f"{path}: length differs"
        for i, (g, a) in enumerate(zip(golden, actual)):
            _assert_same_schema(g, a, f"{path}[{i}]")
    elif isinstance(golden, bool) or not isinstance(golden, (int, float)):
        assert golden == actual, f"{path}: {golden!r} != {actual!r}"
