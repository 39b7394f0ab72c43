"""
Unit tests for CLI (click commands).

All tests use CliRunner; solver failures are injected with mocks.
"""

import json
from unittest.mock import patch

import pandas as pd
import pytest
from click.testing import CliRunner

from pydq_lyapunov.cli import main
from pydq_lyapunov.errors import NoUniqueSolutionError

runner = CliRunner()


def _write_config(path, **overrides):
    data = {"problem": "poisson", "grid": {"kind": "chebyshev-lobatto", "points": [9, 9]}}
    data.update(overrides)
    path.write_text(json.dumps(data))
    return str(path)


def test_version():
    result = runner.invoke(main, ["--version"])
    assert result.exit_code == 0
    assert "pydq-lyapunov" in result.output


def test_config():
    result = runner.invoke(main, ["config"])
    assert result.exit_code == 0
    assert "residual_tol" in result.output
    assert "kronecker_unknown_cap" in result.output


class TestSolve:
    def test_zero_problem(self, tmp_path):
        config = _write_config(tmp_path / "run.json")
        out = tmp_path / "phi.csv"
        result = runner.invoke(main, ["solve", "--config", config, "--out", str(out)])
        assert result.exit_code == 0, result.output
        frame = pd.read_csv(out)
        assert list(frame.columns) == ["x", "y", "value"]
        assert len(frame) == 81
        assert (frame["value"] == 0.0).all()
        report = json.loads((tmp_path / "phi.json").read_text())
        assert report["problem"] == "poisson"
        assert report["grid"] == [9, 9]
        assert report["method"] == "centro-split"

    def test_manufactured(self, tmp_path):
        config = _write_config(tmp_path / "run.json", source="manufactured-sin")
        result = runner.invoke(main, ["solve", "--config", config, "--out", str(tmp_path / "f.csv")])
        assert result.exit_code == 0, result.output
        assert "max error" in result.output
        assert json.loads((tmp_path / "f.json").read_text())["max_error"] < 1e-3

    def test_output_paths_from_config(self, tmp_path):
        output = {"field": str(tmp_path / "a.csv"), "report": str(tmp_path / "b.json")}
        config = _write_config(tmp_path / "run.json", output=output)
        result = runner.invoke(main, ["solve", "--config", config])
        assert result.exit_code == 0, result.output
        assert (tmp_path / "a.csv").exists()
        assert (tmp_path / "b.json").exists()

    def test_method_override(self, tmp_path):
        config = _write_config(tmp_path / "run.json", source={"constant": 1.0})
        out = tmp_path / "f.csv"
        result = runner.invoke(main, ["solve", "--config", config, "--method", "hessenberg-schur", "--out", str(out)])
        assert result.exit_code == 0, result.output
        assert "via hessenberg-schur" in result.output

    def test_compare(self, tmp_path):
        config = _write_config(tmp_path / "run.json", source="manufactured-sin")
        out = tmp_path / "f.csv"
        result = runner.invoke(main, ["solve", "--config", config, "--compare", "--out", str(out)])
        assert result.exit_code == 0, result.output
        assert "compare kronecker-gauss vs bartels-stewart" in result.output
        assert json.loads((tmp_path / "f.json").read_text())["compare_max_diff"] < 1e-9

    def test_transient(self, tmp_path):
        config = _write_config(
            tmp_path / "run.json",
            problem="transient",
            grid={"points": [7, 7]},
            bcs={"x": {"left": {"kind": "dirichlet", "value": 1.0}}},
            transient={"dt": 0.05, "steps": 4},
        )
        out = tmp_path / "f.csv"
        result = runner.invoke(main, ["solve", "--config", config, "--out", str(out)])
        assert result.exit_code == 0, result.output
        report = json.loads((tmp_path / "f.json").read_text())
        assert report["method"] == "backward-euler"
        assert report["final_time"] == pytest.approx(0.2)
        assert report["steps"] == 4

    def test_compare_rejects_transient(self, tmp_path):
        config = _write_config(tmp_path / "run.json", problem="transient", grid={"points": [5, 5]})
        result = runner.invoke(main, ["solve", "--config", config, "--compare"])
        assert result.exit_code == 2
        assert "Error [cli]" in result.output

    def test_invalid_config_exit_2(self, tmp_path):
        config = _write_config(tmp_path / "run.json", beta=-1.0)
        result = runner.invoke(main, ["solve", "--config", config])
        assert result.exit_code == 2
        assert "Error [cli]" in result.output

    def test_missing_config_exit_2(self, tmp_path):
        result = runner.invoke(main, ["solve", "--config", str(tmp_path / "absent.json")])
        assert result.exit_code == 2

    def test_solver_error_exit_3(self, tmp_path):
        config = _write_config(tmp_path / "run.json")
        failure = NoUniqueSolutionError("spectra of G and -R intersect")
        with patch("pydq_lyapunov.runconfig.solve_poisson", side_effect=failure):
            result = runner.invoke(main, ["solve", "--config", config])
        assert result.exit_code == 3
        assert "Error [sylvester_solver]" in result.output


class TestBench:
    def test_ratios(self):
        result = runner.invoke(main, ["bench", "--sizes", "7,11"])
        assert result.exit_code == 0, result.output
        assert "34.9%" in result.output
        assert "5.9%" in result.output
        assert "claimed" in result.output

    def test_empty_sizes(self):
        result = runner.invoke(main, ["bench", "--sizes", ","])
        assert result.exit_code == 2

    def test_non_integer_sizes(self):
        result = runner.invoke(main, ["bench", "--sizes", "7,eleven"])
        assert result.exit_code == 2

    def test_small_ratio_size_is_usage_error(self):
        result = runner.invoke(main, ["bench", "--sizes", "4"])
        assert result.exit_code == 2
        assert "must be >= 5" in result.output

    def test_unknown_method_is_usage_error(self):
        result = runner.invoke(main, ["bench", "--table", "records", "--sizes", "5", "--methods", "lu"])
        assert result.exit_code == 2

    @pytest.mark.parametrize(
        "extra, flag",
        [
            (["--methods", "bartels-stewart"], "--methods"),
            (["--problem", "convdiff"], "--problem"),
            (["--repetitions", "5"], "--repetitions"),
        ],
    )
    def test_ratios_rejects_records_options(self, extra, flag):
        result = runner.invoke(main, ["bench", "--sizes", "7", *extra])
        assert result.exit_code == 2
        assert flag in result.output
        assert "--table records" in result.output

    def test_records_export_reproducible(self, tmp_path):
        args = ["bench", "--table", "records", "--sizes", "5,7", "--methods", "bartels-stewart,hessenberg-schur"]
        first = runner.invoke(main, [*args, "--out", str(tmp_path / "a.csv")])
        second = runner.invoke(main, [*args, "--out", str(tmp_path / "b.csv")])
        assert first.exit_code == 0, first.output
        assert second.exit_code == 0, second.output
        assert (tmp_path / "a.csv").read_bytes() == (tmp_path / "b.csv").read_bytes()
        assert "wall_time" not in (tmp_path / "a.csv").read_text()

        timings = json.loads((tmp_path / "a.timings.json").read_text())
        assert set(timings["wall_time"]) == {
            "poisson-N5-bartels-stewart",
            "poisson-N5-hessenberg-schur",
            "poisson-N7-bartels-stewart",
            "poisson-N7-hessenberg-schur",
        }
        assert len(json.loads((tmp_path / "a.json").read_text())) == 4

    def test_ratios_export(self, tmp_path):
        out = tmp_path / "ratios.csv"
        result = runner.invoke(main, ["bench", "--sizes", "7", "--out", str(out)])
        assert result.exit_code == 0, result.output
        assert pd.read_csv(out)["N"].tolist() == [7]
        assert not (tmp_path / "ratios.timings.json").exists()


class TestConvergence:
    def test_default_problem(self, tmp_path):
        out = tmp_path / "conv.csv"
        result = runner.invoke(main, ["convergence", "--sizes", "5,7,9", "--out", str(out)])
        assert result.exit_code == 0, result.output
        assert "N=5" in result.output
        errors = pd.read_csv(out)["max_error"].tolist()
        assert errors[0] > errors[-1]

    def test_from_config(self, tmp_path):
        config = _write_config(tmp_path / "run.json", problem="convdiff", alpha=0.5, source="manufactured-sin")
        result = runner.invoke(main, ["convergence", "--config", config, "--sizes", "7"])
        assert result.exit_code == 0, result.output
        assert "N=7" in result.output

    def test_config_without_exact_solution(self, tmp_path):
        config = _write_config(tmp_path / "run.json", source={"constant": 1.0})
        result = runner.invoke(main, ["convergence", "--config", config])
        assert result.exit_code == 2
        assert "Error [cli]" in result.output


def test_verbose_flag():
    result = runner.invoke(main, ["-v", "config"])
    assert result.exit_code == 0
