"""
End-to-end tests of the command-line verbs on small configurations.
"""
import json
import os

import pytest
import yaml

from baryopt.commands.verify_bounds import collect_failures, slope_in_range
from baryopt.core.cli import EXIT_CONFIG, EXIT_OK, EXIT_RUNTIME, EXIT_VERIFICATION, build_parser, main
from baryopt.utils.artifacts import read_csv


def write_config(tmp_path, data, name="run.yaml"):
    path = tmp_path / name
    path.write_text(yaml.safe_dump(data), encoding="utf-8")
    return str(path)


def load(path):
    with open(path, encoding="utf-8") as f:
        return json.load(f)


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch):
    for key in list(os.environ):
        if key.startswith("BARYOPT_"):
            monkeypatch.delenv(key)


@pytest.fixture
def oracle_config(sample_config, fast_profile):
    sample_config.update({"mode": "oracle", "temperature": None, "profile": fast_profile})
    return sample_config


class TestParser:

    def test_verbs(self):
        parser = build_parser()
        args = parser.parse_args(["optimize", "--seed-override", "3", "--threads", "2"])
        assert args.command == "optimize"
        assert args.seed_override == 3
        assert args.threads == 2
        assert parser.parse_args(["verify-bounds"]).command == "verify-bounds"

    def test_verb_required(self):
        with pytest.raises(SystemExit):
            build_parser().parse_args([])


class TestOptimize:

    def test_writes_trajectories_and_summary(self, tmp_path, sample_config):
        out = sample_config["output_dir"]
        assert main(["optimize", "--config", write_config(tmp_path, sample_config)]) == EXIT_OK
        summary = load(os.path.join(out, "summary.json"))
        assert summary["seeds"] == [0, 1]
        assert summary["temperature"] == 0.2
        assert [r["seed"] for r in summary["runs"]] == [0, 1]
        assert summary["success"]["runs"] == 2
        assert summary["config"]["chain"]["burn_in"] == 20
        rows = read_csv(os.path.join(out, "trajectory_seed0.csv"))
        assert rows[0] == ["n", "xhat0", "xhat1", "xhat2", "distance", "U"]
        assert rows[1][0] == "0"
        assert rows[-1][0] == "200"
        assert os.path.exists(os.path.join(out, "objective_profile.csv"))
        ergodicity = summary["ergodicity"]
        assert ergodicity["oscillation"] == pytest.approx(2.0)
        assert ergodicity["oscillation_source"] == "exact"
        assert 0.0 < ergodicity["p_T"] <= 1.0
        assert ergodicity["convergence_factor"] == pytest.approx((1.0 - ergodicity["p_T"]) ** 200)
        assert ergodicity["convergence_factor"] <= 1.0

    def test_zero_steps_returns_init(self, tmp_path, sample_config):
        sample_config["chain"] = {"steps": 0}
        sample_config["seeds"] = [5]
        assert main(["optimize", "--config", write_config(tmp_path, sample_config)]) == EXIT_OK
        run = load(os.path.join(sample_config["output_dir"], "summary.json"))["runs"][0]
        assert run["x_hat"] == [0.0, 0.0, -1.0]
        assert run["tracked_samples"] == 0

    def test_output_is_deterministic(self, tmp_path, sample_config):
        path = write_config(tmp_path, sample_config)
        first, second = str(tmp_path / "a"), str(tmp_path / "b")
        assert main(["optimize", "--config", path, "--out", first, "--threads", "1"]) == EXIT_OK
        assert main(["optimize", "--config", path, "--out", second, "--threads", "2"]) == EXIT_OK
        for seed in (0, 1):
            name = f"trajectory_seed{seed}.csv"
            with open(os.path.join(first, name), "rb") as a, open(os.path.join(second, name), "rb") as b:
                assert a.read() == b.read()

    def test_seed_override_and_samples(self, tmp_path, sample_config):
        sample_config["chain"]["write_samples"] = True
        path = write_config(tmp_path, sample_config)
        assert main(["optimize", "--config", path, "--seed-override", "7"]) == EXIT_OK
        out = sample_config["output_dir"]
        assert load(os.path.join(out, "summary.json"))["seeds"] == [7]
        rows = read_csv(os.path.join(out, "samples_seed7.csv"))
        assert len(rows) == 1 + 180

    def test_oracle_mode_uses_t_delta(self, tmp_path, oracle_config):
        oracle_config["seeds"] = [0]
        assert main(["optimize", "--config", write_config(tmp_path, oracle_config)]) == EXIT_OK
        out = oracle_config["output_dir"]
        summary = load(os.path.join(out, "summary.json"))
        report = load(os.path.join(out, "temperatures.json"))["report"]
        assert summary["temperature"] == pytest.approx(report["T_delta"])
        assert report["T_delta"] < report["T_o"]

    def test_grassmann(self, tmp_path):
        out = str(tmp_path / "gr")
        config = {
            "manifold": {"name": "grassmann", "k": 1, "n": 3},
            "objective": {"name": "grassmann_trace", "diagonal": [3.0, 2.0, 1.0]},
            "temperature": 0.05,
            "chain": {"steps": 100, "trajectory_stride": 25},
            "output_dir": out,
        }
        assert main(["optimize", "--config", write_config(tmp_path, config)]) == EXIT_OK
        rows = read_csv(os.path.join(out, "trajectory_seed0.csv"))
        assert len(rows[0]) == 1 + 18 + 2
        assert not os.path.exists(os.path.join(out, "objective_profile.csv"))
        ergodicity = load(os.path.join(out, "summary.json"))["ergodicity"]
        assert ergodicity["oscillation"] == pytest.approx(2.0)
        assert ergodicity["p_T"] == 0.0
        assert ergodicity["convergence_factor"] == 1.0


class TestFailures:

    def test_invalid_config_exits_2(self, tmp_path, sample_config, capsys):
        sample_config["chain"]["steps"] = -1
        out = str(tmp_path / "bad")
        code = main(["optimize", "--config", write_config(tmp_path, sample_config), "--out", out])
        assert code == EXIT_CONFIG
        record = load(os.path.join(out, "error.json"))
        assert record["error"] == "ConfigurationError"
        assert "chain.steps" in record["paths"]
        assert record["command"] == "optimize"
        assert json.loads(capsys.readouterr().err.strip().splitlines()[-1]) == record

    def test_missing_config_file_exits_2(self, tmp_path):
        out = str(tmp_path / "missing")
        assert main(["optimize", "--config", str(tmp_path / "nope.yaml"), "--out", out]) == EXIT_CONFIG
        assert os.path.exists(os.path.join(out, "error.json"))

    def test_temperatures_needs_oracle(self, tmp_path, sample_config):
        assert main(["temperatures", "--config", write_config(tmp_path, sample_config)]) == EXIT_CONFIG
        record = load(os.path.join(sample_config["output_dir"], "error.json"))
        assert record["paths"] == ["mode"]

    def test_failed_seed_exits_1(self, tmp_path, sample_config):
        sample_config["init"] = [0.0, 0.0, 1.0, 0.0]
        assert main(["optimize", "--config", write_config(tmp_path, sample_config)]) == EXIT_RUNTIME
        out = sample_config["output_dir"]
        summary = load(os.path.join(out, "summary.json"))
        assert len(summary["failed_runs"]) == 2
        assert summary["failed_runs"][0]["error"]["error"] == "DimensionMismatchError"
        assert load(os.path.join(out, "error.json"))["error"] == "BaryOptError"


class TestOtherVerbs:

    def test_temperatures(self, tmp_path, oracle_config):
        assert main(["temperatures", "--config", write_config(tmp_path, oracle_config)]) == EXIT_OK
        payload = load(os.path.join(oracle_config["output_dir"], "temperatures.json"))
        report = payload["report"]
        assert 0.0 < report["T_delta"] < report["T_o"]
        assert report["delta"] == pytest.approx(0.3 * 3.141592653589793 / 2.0)
        assert payload["config"]["mode"] == "oracle"

    def test_compare(self, tmp_path, sample_config):
        sample_config["compare"] = {"trajectory_stride": 50,
                                    "schedules": [{"kind": "geometric", "T0": 1.0, "ratio": 0.99},
                                                  {"kind": "logarithmic", "c": 1.0}]}
        assert main(["compare", "--config", write_config(tmp_path, sample_config)]) == EXIT_OK
        out = sample_config["output_dir"]
        payload = load(os.path.join(out, "comparison.json"))
        assert set(payload["methods"]) == {"barycentre", "annealing_0_geometric", "annealing_1_logarithmic"}
        for summary in payload["methods"].values():
            assert summary["runs"] == 2
            assert len(summary["runs_detail"]) == 2
        for name in ("barycentre_trajectory_seed0.csv", "annealing_0_geometric_trajectory_seed1.csv"):
            assert os.path.exists(os.path.join(out, name))
        rows = read_csv(os.path.join(out, "annealing_1_logarithmic_trajectory_seed0.csv"))
        assert [r[0] for r in rows[1:]] == ["0", "50", "100", "150", "200"]

    def test_verify_bounds(self, tmp_path, oracle_config):
        oracle_config["verify"] = {"grid_size": 2, "steps": 3000, "burn_in": 500,
                                   "hessian_points": 3, "hessian_directions": 2}
        code = main(["verify-bounds", "--config", write_config(tmp_path, oracle_config)])
        assert code in (EXIT_OK, EXIT_VERIFICATION)
        out = oracle_config["output_dir"]
        payload = load(os.path.join(out, "verification.json"))
        assert len(payload["rows"]) == 3
        temperatures = [row["T"] for row in payload["rows"]]
        assert temperatures == sorted(temperatures)
        assert payload["passed"] == (code == EXIT_OK)
        rows = read_csv(os.path.join(out, "verification.csv"))
        assert rows[0][:3] == ["T", "applicable", "W"]
        assert rows[0][-2:] == ["p_T", "convergence_factor"]
        for row in payload["rows"]:
            assert 0.0 <= row["p_T"] <= 1.0
            assert row["convergence_factor"] == pytest.approx((1.0 - row["p_T"]) ** 3000)
        assert payload["stationarity_checked"] is True
        if code == EXIT_VERIFICATION:
            assert load(os.path.join(out, "error.json"))["error"] == "VerificationFailedError"

    def test_compare_on_squared_distance(self, tmp_path, sample_config):
        sample_config["objective"] = {"name": "squared_distance", "center": [1.0, 0.0, 0.0]}
        sample_config["chain"]["steps"] = 20
        assert main(["compare", "--config", write_config(tmp_path, sample_config)]) == EXIT_OK
        payload = load(os.path.join(sample_config["output_dir"], "comparison.json"))
        assert payload["methods"]["barycentre"]["runs"] == 2


class TestVerificationGate:

    @staticmethod
    def row(T, applicable=True, W_pass=True, hessian_pass=True, stationary=True):
        return {"T": T, "applicable": applicable, "W_pass": W_pass, "hessian_pass": hessian_pass,
                "stationary": stationary}

    def test_all_checks_pass(self):
        rows = [self.row(0.01), self.row(0.04), self.row(0.16), self.row(1.0, applicable=False)]
        assert collect_failures(rows, 0.5, require_stationary=True) == []

    def test_inequality_failures(self):
        rows = [self.row(0.01, W_pass=False), self.row(0.04, hessian_pass=False),
                self.row(0.16), self.row(1.0, applicable=False, W_pass=False)]
        assert collect_failures(rows, 0.5, require_stationary=False) == ["T=0.01", "T=0.04"]

    def test_stationarity_gates_symmetric_objectives_only(self):
        rows = [self.row(0.01), self.row(0.04, stationary=False)]
        assert collect_failures(rows, 0.5, require_stationary=True) == ["T=0.04"]
        assert collect_failures(rows, 0.5, require_stationary=False) == []

    def test_slope_gates_with_three_rows(self):
        rows = [self.row(0.01), self.row(0.04), self.row(0.16)]
        assert collect_failures(rows, 0.9, require_stationary=False) == ["sqrt_T_slope=0.9"]
        assert collect_failures(rows, float("nan"), require_stationary=False) == ["sqrt_T_slope=nan"]
        assert collect_failures(rows[:2], 0.9, require_stationary=False) == []
        assert slope_in_range(0.45)
        assert not slope_in_range(0.7)
