"""Tests for centrosymmetric classification and the split solve."""

import numpy as np
import pytest
from scipy import linalg as sla

from pydq_lyapunov.dq.boundary import BoundaryCondition, reduce_operator
from pydq_lyapunov.dq.operators import build_dq_operator, chebyshev_lobatto_points, explicit_points
from pydq_lyapunov.errors import SymmetryError
from pydq_lyapunov.sylvester import (
    SylvesterProblem,
    SymmetryTag,
    classify_symmetry,
    exchange_transform,
    solve_bartels_stewart,
    solve_sylvester_centro,
    split_centrosymmetric,
)
from pydq_lyapunov.sylvester.centrosym import fold_rows, unfold_rows
from pydq_lyapunov.sylvester.solvers import BartelsStewartSolver


def _centro(rng, n, shift=0.0):
    """Random centrosymmetric matrix ``(M + J M J) / 2 + shift I``."""
    m = rng.standard_normal((n, n))
    return 0.5 * (m + m[::-1, ::-1]) + shift * np.eye(n)


def _random_centro_problem(rng, n, m):
    return SylvesterProblem(_centro(rng, n, n + 2), _centro(rng, m, m + 2), rng.standard_normal((n, m)))


def _reduced_b(n):
    op = build_dq_operator(chebyshev_lobatto_points(n))
    return reduce_operator(op, BoundaryCondition()).b_bar


class TestClassify:
    def test_centrosymmetric_2x2(self):
        assert classify_symmetry(np.array([[3.0, 1.0], [1.0, 3.0]])).tag is SymmetryTag.CENTROSYMMETRIC

    def test_skew(self):
        cls = classify_symmetry(np.array([[0.0, 1.0], [-1.0, 0.0]]))
        assert cls.tag is SymmetryTag.SKEW_CENTROSYMMETRIC
        assert not cls.centrosymmetric

    def test_none(self):
        assert classify_symmetry(np.array([[1.0, 2.0], [3.0, 4.0]])).tag is SymmetryTag.NONE

    def test_zero_is_centrosymmetric(self):
        assert classify_symmetry(np.zeros((3, 3))).centrosymmetric

    def test_reduced_operator_from_symmetric_grid(self):
        assert classify_symmetry(_reduced_b(9)).centrosymmetric
        assert classify_symmetry(_reduced_b(10)).centrosymmetric

    def test_asymmetric_grid(self):
        op = build_dq_operator(explicit_points([0.0, 0.1, 0.3, 0.7, 1.0]))
        b_bar = reduce_operator(op, BoundaryCondition()).b_bar
        assert classify_symmetry(b_bar).tag is SymmetryTag.NONE


class TestTransform:
    @pytest.mark.parametrize("n", [1, 2, 5, 6])
    def test_orthogonal(self, n):
        k = exchange_transform(n)
        assert np.allclose(k.T @ k, np.eye(n), atol=1e-15)

    @pytest.mark.parametrize("n", [4, 7])
    def test_fold_matches_transform(self, n, rng):
        q = rng.standard_normal((n, 3))
        sym, skew = fold_rows(q)
        assert np.allclose(np.vstack([sym, skew]), exchange_transform(n).T @ q, atol=1e-14)
        assert np.allclose(unfold_rows(sym, skew), q, atol=1e-14)


class TestSplit:
    def test_2x2_closed_form(self):
        split = split_centrosymmetric(np.array([[5.0, 2.0], [2.0, 5.0]]))
        assert np.allclose(split.blocks[0], [[7.0]])
        assert np.allclose(split.blocks[1], [[3.0]])

    def test_identity(self):
        split = split_centrosymmetric(np.eye(5))
        assert np.allclose(split.blocks[0], np.eye(3))
        assert np.allclose(split.blocks[1], np.eye(2))

    @pytest.mark.parametrize("n", [4, 5, 8])
    def test_block_diagonalises(self, n, rng):
        m = _centro(rng, n)
        split = split_centrosymmetric(m)
        k = split.transform
        assert np.allclose(k.T @ m @ k, split.block_diagonal(), atol=1e-12)

    def test_eigenvalues_preserved(self, rng):
        m = _centro(rng, 4)
        split = split_centrosymmetric(m)
        ours = np.concatenate([sla.eigvals(b) for b in split.blocks])
        assert np.allclose(np.sort_complex(ours), np.sort_complex(sla.eigvals(m)), atol=1e-10)

    def test_rejects_general(self, rng):
        with pytest.raises(SymmetryError):
            split_centrosymmetric(rng.standard_normal((4, 4)))


class TestCentroSolve:
    def test_identity(self):
        sol = solve_sylvester_centro(SylvesterProblem(np.eye(4), np.eye(4), 2 * np.eye(4)))
        assert np.allclose(sol.x, np.eye(4), atol=1e-13)

    @pytest.mark.parametrize("parallel", [False, True])
    @pytest.mark.parametrize("n, m", [(1, 1), (1, 16), (16, 1), (2, 3), (7, 10), (16, 16)])
    def test_matches_full_solve(self, n, m, parallel, rng):
        p = _random_centro_problem(rng, n, m)
        assert np.allclose(solve_sylvester_centro(p, parallel=parallel).x, solve_bartels_stewart(p).x, atol=1e-9)

    @pytest.mark.parametrize("parallel", [False, True])
    @pytest.mark.parametrize("seed", range(100))
    def test_random_sweep_matches_full_solve(self, seed, parallel):
        rng = np.random.default_rng(seed)
        n, m = (int(s) for s in rng.integers(1, 17, size=2))
        p = _random_centro_problem(rng, n, m)
        assert np.allclose(solve_sylvester_centro(p, parallel=parallel).x, solve_bartels_stewart(p).x, atol=1e-9)

    def test_poisson_pair(self, rng):
        b = _reduced_b(11)
        p = SylvesterProblem(b, b.T, rng.standard_normal((9, 9)))
        assert np.allclose(solve_sylvester_centro(p).x, solve_bartels_stewart(p).x, atol=1e-9)

    def test_parallel_matches_serial(self, rng):
        p = SylvesterProblem(_centro(rng, 6, 6), _centro(rng, 5, 5), rng.standard_normal((6, 5)))
        serial = solve_sylvester_centro(p)
        threaded = solve_sylvester_centro(p, parallel=True)
        assert np.array_equal(serial.x, threaded.x)
        assert serial.report.counted_multiplications == threaded.report.counted_multiplications

    def test_cost_reduction(self, rng):
        n = 16
        p = SylvesterProblem(_centro(rng, n, n), _centro(rng, n, n), rng.standard_normal((n, n)))
        centro = solve_sylvester_centro(p).report.counted_multiplications
        full = BartelsStewartSolver().solve(p).report.counted_multiplications
        assert centro <= 0.35 * full

    def test_rejects_general(self, rng):
        p = SylvesterProblem(rng.standard_normal((4, 4)), _centro(rng, 4, 4), np.zeros((4, 4)))
        with pytest.raises(SymmetryError):
            solve_sylvester_centro(p)

    def test_auto_selects_centro(self, rng):
        from pydq_lyapunov.sylvester import solve_sylvester

        b = _reduced_b(9)
        sol = solve_sylvester(SylvesterProblem(b, b.T, rng.standard_normal((7, 7))))
        assert sol.report.method == "centro-split"
        assert sol.report.notes == ()
