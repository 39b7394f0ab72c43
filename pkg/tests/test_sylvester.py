"""Tests for the Sylvester solvers and the solver registry."""

import logging
from unittest.mock import patch

import numpy as np
import pytest
from scipy import linalg as sla

from pydq_lyapunov.config import configure
from pydq_lyapunov.core.linalg import real_schur
from pydq_lyapunov.errors import NoUniqueSolutionError, ParameterError, ProblemTooLargeError, ShapeError
from pydq_lyapunov.sylvester import (
    METHOD_TAGS,
    SOLVERS,
    BartelsStewartFactorization,
    SylvesterProblem,
    assemble_kronecker_system,
    solve_bartels_stewart,
    solve_hessenberg_schur,
    solve_kronecker_baseline,
    solve_sylvester,
)
from tests.conftest import random_stable

SOLVER_FUNCS = [solve_bartels_stewart, solve_hessenberg_schur, solve_kronecker_baseline]


def _random_problem(rng, n, m):
    return SylvesterProblem(random_stable(rng, n), random_stable(rng, m), rng.standard_normal((n, m)))


class TestSylvesterProblem:
    def test_shapes(self):
        p = SylvesterProblem(np.eye(3), np.eye(2), np.zeros((3, 2)))
        assert (p.n, p.m) == (3, 2)

    def test_q_shape_mismatch(self):
        with pytest.raises(ShapeError):
            SylvesterProblem(np.eye(3), np.eye(2), np.zeros((2, 3)))

    def test_non_square(self):
        with pytest.raises(ShapeError):
            SylvesterProblem(np.ones((2, 3)), np.eye(2), np.zeros((2, 2)))

    def test_zero_rhs_residual(self):
        p = SylvesterProblem(np.eye(2), np.eye(2), np.zeros((2, 2)))
        assert p.relative_residual(np.zeros((2, 2))) == 0.0


@pytest.mark.parametrize("solve", SOLVER_FUNCS, ids=lambda f: f.__name__)
class TestKnownSolutions:
    def test_identity(self, solve):
        sol = solve(SylvesterProblem(np.eye(3), np.eye(3), 2 * np.eye(3)))
        assert np.allclose(sol.x, np.eye(3), atol=1e-13)

    def test_diagonal_decoupling(self, solve):
        p = SylvesterProblem(np.diag([1.0, 2.0]), np.diag([3.0, 4.0]), np.array([[4.0, 5.0], [5.0, 6.0]]))
        assert np.allclose(solve(p).x, np.ones((2, 2)), atol=1e-13)

    def test_scalar(self, solve):
        sol = solve(SylvesterProblem([[2.0]], [[3.0]], [[10.0]]))
        assert sol.x[0, 0] == pytest.approx(2.0)

    def test_random_matches_scipy(self, solve, rng):
        p = _random_problem(rng, 5, 4)
        ref = sla.solve_sylvester(p.g, p.r, p.q)
        sol = solve(p)
        assert np.allclose(sol.x, ref, atol=1e-10)
        assert sol.report.relative_residual < 1e-12

    def test_complex_spectra(self, solve, rng):
        """Rotation-dominated operands produce 2x2 Schur blocks on both sides."""
        n = 6
        g = 3 * np.eye(n) + np.kron(np.eye(n // 2), [[0.0, -2.0], [2.0, 0.0]]) + 0.1 * rng.standard_normal((n, n))
        r = 2 * np.eye(4) + np.kron(np.eye(2), [[0.0, 1.5], [-1.5, 0.0]]) + 0.1 * rng.standard_normal((4, 4))
        p = SylvesterProblem(g, r, rng.standard_normal((n, 4)))
        assert np.allclose(solve(p).x, sla.solve_sylvester(g, r, p.q), atol=1e-10)

    def test_report(self, solve, rng):
        report = solve(_random_problem(rng, 4, 4)).report
        assert report.counted_multiplications > 0
        assert report.model_multiplications > 0
        assert report.wall_time >= 0.0


class TestSingular:
    def test_bartels_stewart_names_pair(self):
        p = SylvesterProblem(np.diag([1.0, 2.0]), np.diag([-2.0, 5.0]), np.ones((2, 2)))
        with pytest.raises(NoUniqueSolutionError) as exc:
            solve_bartels_stewart(p)
        lam, mu = exc.value.eigenvalues
        assert lam.real == pytest.approx(2.0)
        assert mu.real == pytest.approx(-2.0)

    def test_hessenberg_schur(self):
        p = SylvesterProblem(np.diag([1.0, 2.0]), np.diag([-2.0, 5.0]), np.ones((2, 2)))
        with pytest.raises(NoUniqueSolutionError):
            solve_hessenberg_schur(p)

    def test_kronecker(self):
        p = SylvesterProblem(np.diag([1.0, 2.0]), np.diag([-2.0, 5.0]), np.ones((2, 2)))
        with pytest.raises(NoUniqueSolutionError):
            solve_kronecker_baseline(p)

    def test_contract_tag(self):
        p = SylvesterProblem([[1.0]], [[-1.0]], [[1.0]])
        with pytest.raises(NoUniqueSolutionError) as exc:
            solve_bartels_stewart(p)
        assert exc.value.contract == "sylvester_solver"


class TestKronecker:
    def test_assembled_residual_matches_matrix_form(self, rng):
        p = _random_problem(rng, 4, 3)
        x = rng.standard_normal((4, 3))
        big, rhs = assemble_kronecker_system(p)
        flat = big @ x.reshape(-1, 1, order="F") - rhs
        assert np.allclose(flat.reshape(4, 3, order="F"), p.residual(x), atol=1e-12)

    def test_cap(self, rng):
        configure(kronecker_unknown_cap=10)
        with pytest.raises(ProblemTooLargeError):
            solve_kronecker_baseline(_random_problem(rng, 4, 3))

    def test_count_near_model(self, rng):
        for size in (7, 9):
            n = size - 2
            report = solve_kronecker_baseline(_random_problem(rng, n, n)).report
            assert 0.7 <= report.counted_multiplications / ((n * n) ** 3 / 3) <= 1.3


class TestHessenbergSchur:
    def test_cheaper_than_bartels_stewart(self, rng):
        for n, m in [(8, 8), (12, 8), (16, 10)]:
            p = _random_problem(rng, n, m)
            hs = solve_hessenberg_schur(p).report.counted_multiplications
            bs = solve_bartels_stewart(p).report.counted_multiplications
            assert hs < bs

    def test_interleaved_band(self, rng):
        from pydq_lyapunov.sylvester.solvers import _interleaved_system

        h = np.triu(rng.standard_normal((5, 5)), -1)
        t = np.array([[1.0, 2.0], [-3.0, 1.0]])
        big = _interleaved_system(h, t, 0)
        assert np.all(np.tril(big, -3) == 0.0)


class TestFactorization:
    def test_reuse_for_many_rhs(self, rng):
        p = _random_problem(rng, 5, 5)
        fact = BartelsStewartFactorization.factorize(p.g, p.r)
        for _ in range(3):
            q = rng.standard_normal((5, 5))
            x = fact.solve(q)
            assert np.allclose(p.g @ x + x @ p.r, q, atol=1e-11)

    def test_collision_at_construction(self):
        with pytest.raises(NoUniqueSolutionError):
            BartelsStewartFactorization.factorize(np.diag([1.0, 3.0]), np.diag([-3.0, 7.0]))

    def test_schur_computed_once(self, rng):
        p = _random_problem(rng, 4, 4)
        with patch("pydq_lyapunov.sylvester.solvers.real_schur", wraps=real_schur) as spy:
            fact = BartelsStewartFactorization.factorize(p.g, p.r)
            for _ in range(5):
                fact.solve(rng.standard_normal((4, 4)))
        assert spy.call_count == 2


class TestRegistry:
    def test_tags(self):
        assert set(SOLVERS) == {"bartels-stewart", "hessenberg-schur", "kronecker-gauss", "centro-split"}
        assert METHOD_TAGS[0] == "auto"

    def test_unknown_method(self, rng):
        with pytest.raises(ParameterError):
            solve_sylvester(_random_problem(rng, 2, 2), "cholesky")

    def test_auto_falls_back(self, rng):
        sol = solve_sylvester(_random_problem(rng, 4, 4), "auto")
        assert sol.report.method == "bartels-stewart"
        assert any("centro-split not applicable" in n for n in sol.report.notes)

    def test_fallback_logged_as_warning(self, rng, caplog):
        with caplog.at_level(logging.WARNING, logger="pydq_lyapunov.sylvester.centrosym"):
            solve_sylvester(_random_problem(rng, 4, 4), "auto")
        assert any("centro-split not applicable" in r.getMessage() for r in caplog.records)

    @pytest.mark.parametrize("method", ["bartels-stewart", "hessenberg-schur", "kronecker-gauss"])
    def test_dispatch(self, method, rng):
        sol = solve_sylvester(_random_problem(rng, 3, 4), method)
        assert sol.report.method == method

    @pytest.mark.slow
    def test_oracle_equivalence_sweep(self, rng):
        for _ in range(200):
            n, m = rng.integers(1, 13, size=2)
            p = _random_problem(rng, int(n), int(m))
            xs = [f(p).x for f in SOLVER_FUNCS]
            scale = 1.0 + np.linalg.norm(xs[0])
            for x in xs[1:]:
                assert np.max(np.abs(x - xs[0])) <= 1e-9 * scale
