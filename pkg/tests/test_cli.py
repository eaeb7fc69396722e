"""Command-line behavior: dispatch, artifacts, exit codes."""

import csv
import json
import subprocess
import sys

import pytest

from adwifi.cli import main
from adwifi.market import MarketParams
from adwifi.platform import solve_equilibrium

BASELINE = {"mode": "asymptotic", "N": 200, "theta_max": 1.0, "beta": 0.1,
            "lambda": 4.0, "gamma": 0.5, "a": 4.0, "eta": 1.0,
            "epsilon": 0.01}


@pytest.fixture
def config(tmp_path):
    path = tmp_path / "config.json"
    path.write_text(json.dumps(BASELINE))
    return str(path)


class TestEquilibriumCommand:
    def test_human_output(self, config, capsys):
        assert main(["equilibrium", "--config", config]) == 0
        out = capsys.readouterr().out
        assert "OmegaMid" in out
        assert "delta*" in out
        assert "social welfare" in out

    def test_json_round_trips(self, config, capsys):
        assert main(["equilibrium", "--config", config, "--json"]) == 0
        payload = json.loads(capsys.readouterr().out)
        params = MarketParams.from_dict(payload["params"])
        assert params == MarketParams.from_dict(BASELINE)
        eq = solve_equilibrium(params)
        got = payload["equilibrium"]
        assert got["regime"] == eq.regime.name
        assert got["delta_star"] == eq.delta_star
        assert got["social_welfare"] == eq.social_welfare

    def test_invalid_beta_exits_two(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps({**BASELINE, "beta": 1.5}))
        assert main(["equilibrium", "--config", str(bad)]) == 2
        assert "beta" in capsys.readouterr().err

    def test_missing_file_exits_two(self, tmp_path, capsys):
        assert main(["equilibrium", "--config", str(tmp_path / "nope.json")]) == 2
        assert "error:" in capsys.readouterr().err

    def test_malformed_json_exits_two(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        assert main(["equilibrium", "--config", str(bad)]) == 2
        assert "JSON" in capsys.readouterr().err


class TestSweepCommand:
    def test_two_by_two_grid(self, config, tmp_path, capsys):
        out = tmp_path / "artifacts"
        assert main(["sweep", "--config", config, "--grid", "2",
                     "--outdir", str(out)]) == 0
        csv_path = out / "sweep_0.csv"
        with open(csv_path) as fh:
            rows = list(csv.reader(fh))
        assert rows[0] == ["gamma", "lambda", "field", "value"]
        cells = {(r[0], r[1]) for r in rows[1:]}
        assert len(cells) == 4
        for field in ("delta_star", "p_f_star", "phi_a", "social_welfare"):
            assert (out / f"sweep_{field}_0.png").exists()


class TestSimulateCommand:
    def test_artifacts_and_summary(self, config, tmp_path, capsys):
        out = tmp_path / "artifacts"
        assert main(["simulate", "--config", config, "--replications", "15",
                     "--seed", "3", "--outdir", str(out)]) == 0
        report = json.loads((out / "simulate_3.json").read_text())
        assert report["replication_count"] == 15
        assert (out / "tau_3.csv").exists()
        assert (out / "tau_3.png").exists()
        text = capsys.readouterr().out
        assert "rel gap" in text


class TestUniformCommand:
    def test_artifacts_and_summary(self, config, tmp_path, capsys):
        out = tmp_path / "artifacts"
        assert main(["uniform", "--config", config, "--vo-count", "500",
                     "--seed", "2", "--outdir", str(out)]) == 0
        assert (out / "uniform_2.csv").exists()
        assert (out / "uniform_2.png").exists()
        text = capsys.readouterr().out
        assert "delta_U*" in text


class TestVerifyCommand:
    def test_oracle_suites_pass(self, tmp_path, capsys):
        code = main(["verify", "--draws", "25", "--grid-points", "10000",
                     "--zeta-draws", "300", "--outdir", str(tmp_path)])
        out = capsys.readouterr().out
        assert out.count("PASS") + out.count("FAIL") == 4
        assert "ad-price oracle" in out and "zeta experiment" in out
        assert (tmp_path / "zeta_0.csv").exists()
        assert (tmp_path / "zeta_0.png").exists()
        assert code in (0, 1)
        for label in ("ad-price oracle", "wifi-price oracle", "sharing oracle"):
            line = next(l for l in out.splitlines() if l.startswith(label))
            assert "PASS" in line

    def test_worker_env_parallel_path(self, tmp_path, capsys, monkeypatch):
        monkeypatch.setenv("ADWIFI_WORKERS", "2")
        code = main(["verify", "--draws", "8", "--grid-points", "10000",
                     "--zeta-draws", "100", "--outdir", str(tmp_path)])
        assert code in (0, 1)
        assert "ad-price oracle" in capsys.readouterr().out

    def test_bad_worker_env_exits_two(self, monkeypatch, capsys):
        monkeypatch.setenv("ADWIFI_WORKERS", "two")
        assert main(["verify", "--draws", "2"]) == 2
        assert "ADWIFI_WORKERS" in capsys.readouterr().err


def test_console_entry_point(config):
    proc = subprocess.run([sys.executable, "-m", "adwifi", "equilibrium",
                           "--config", config, "--json"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["equilibrium"]["regime"] == "OmegaMid"
