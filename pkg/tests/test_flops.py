"""Tests for the multiplication-count models."""

import numpy as np
import pytest

from pydq_lyapunov.config import configure
from pydq_lyapunov.errors import ParameterError
from pydq_lyapunov.sylvester import SylvesterProblem
from pydq_lyapunov.sylvester.flops import METHODS, cost_ratio, flop_model
from pydq_lyapunov.sylvester.solvers import BartelsStewartSolver, HessenbergSchurSolver
from tests.conftest import random_stable

SCALING_SIZES = (8, 12, 16, 24)


class TestAnalytic:
    def test_r_thr_square(self):
        """14 1/3 n^3 + n^2 when n = m."""
        assert flop_model("r-thr", 5, 5) == pytest.approx(1816.6667, abs=1e-3)

    def test_r_thr_rectangular(self):
        assert flop_model("r-thr", 2, 3) == pytest.approx(8 + 36 + 84 + 90 + 4)

    def test_kronecker(self):
        assert flop_model("kronecker-gauss", 5, 5) == pytest.approx(5208.3333, abs=1e-3)

    @pytest.mark.parametrize("size, expected", [(7, 0.349), (11, 0.0594)])
    def test_published_ratios(self, size, expected):
        n = size - 2
        assert cost_ratio("r-thr", n, n) == pytest.approx(expected, abs=5e-4)

    @pytest.mark.parametrize("size, expected", [(7, 0.0884), (11, 0.0150)])
    def test_centro_ratios(self, size, expected):
        n = size - 2
        assert cost_ratio("r-thr-centro", n, n) == pytest.approx(expected, abs=5e-4)

    def test_rk4_scales_with_steps(self):
        assert flop_model("rk4", 4, 4, steps=10) == pytest.approx(10 * flop_model("rk4", 4, 4))


class TestCalibrated:
    def test_all_methods_positive(self):
        for method in METHODS:
            assert flop_model(method, 6, 5) > 0

    def test_hessenberg_cheaper_than_schur(self):
        assert flop_model("hessenberg-schur", 10, 10) < flop_model("bartels-stewart", 10, 10)

    def test_centro_split_quarter_cost(self):
        ratio = flop_model("centro-split", 16, 16) / flop_model("bartels-stewart", 16, 16)
        assert 0.2 < ratio < 0.35

    def test_backward_euler_factorizes_once(self):
        one = flop_model("backward-euler", 8, 8, steps=1)
        ten = flop_model("backward-euler", 8, 8, steps=10)
        per_step = (ten - one) / 9
        assert per_step < 0.2 * flop_model("bartels-stewart", 8, 8)

    def test_coefficients_from_settings(self):
        before = flop_model("bartels-stewart", 6, 6)
        configure(schur_cost_coeff=36.0)
        assert flop_model("bartels-stewart", 6, 6) > before


class TestCountedAgainstModel:
    """Instrumented counts grow like n^3 and track the calibration curves."""

    @pytest.fixture(scope="class")
    def counts(self):
        rng = np.random.default_rng(8)
        out = {}
        for n in SCALING_SIZES:
            p = SylvesterProblem(random_stable(rng, n), random_stable(rng, n), rng.standard_normal((n, n)))
            out[n] = {
                "bartels-stewart": BartelsStewartSolver().solve(p).report.counted_multiplications,
                "hessenberg-schur": HessenbergSchurSolver().solve(p).report.counted_multiplications,
            }
        return out

    @pytest.mark.parametrize("method", ["bartels-stewart", "hessenberg-schur"])
    def test_cubic_constant_stable(self, counts, method):
        constants = np.array([counts[n][method] / (4 * n**3) for n in SCALING_SIZES])
        assert np.all(np.abs(constants - constants.mean()) <= 0.25 * constants.mean())

    @pytest.mark.parametrize("method", ["bartels-stewart", "hessenberg-schur"])
    def test_counted_within_model_band(self, counts, method):
        for n in SCALING_SIZES:
            assert 0.8 <= counts[n][method] / flop_model(method, n, n) <= 1.4

    def test_hessenberg_counts_below_schur(self, counts):
        for n in SCALING_SIZES:
            assert counts[n]["hessenberg-schur"] < counts[n]["bartels-stewart"]


class TestErrors:
    def test_unknown_method(self):
        with pytest.raises(ParameterError):
            flop_model("strassen", 3, 3)

    def test_bad_size(self):
        with pytest.raises(ParameterError):
            flop_model("r-thr", 0, 3)

    def test_bad_steps(self):
        with pytest.raises(ParameterError):
            flop_model("rk4", 3, 3, steps=0)
