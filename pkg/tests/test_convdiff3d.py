"""Tests for 3-D convection-diffusion through the Kronecker reshaping."""

import numpy as np
import pytest

from pydq_lyapunov.config import configure
from pydq_lyapunov.dq.boundary import BoundaryCondition, dirichlet, neumann
from pydq_lyapunov.errors import ParameterError, ProblemTooLargeError
from pydq_lyapunov.pde import (
    MANUFACTURED,
    ConvDiff3dSpec,
    assemble_convdiff3d,
    convdiff3d_residual,
    make_grid,
    solve_convdiff3d,
)
from pydq_lyapunov.pde.base import reduce_axes


def _grid(n):
    return make_grid((n, n, n), "chebyshev-lobatto")


def _flat_oracle(spec):
    """Interior solution from one (nx ny nz)-square dense system."""
    red_x, red_y, red_z = reduce_axes(spec.grid, spec.bcs)
    ix, iy, iz = (np.eye(r.n) for r in (red_x, red_y, red_z))
    big = (
        np.kron(iz, np.kron(iy, red_x.a_bar))
        - spec.beta * np.kron(iz, np.kron(red_y.b_bar, ix))
        - spec.gamma * np.kron(red_z.b_bar, np.kron(iy, ix))
    )
    rhs = np.full(big.shape[0], float(spec.source))
    flat = np.linalg.solve(big, rhs)
    return flat.reshape(red_x.n, red_y.n, red_z.n, order="F")


class TestConvDiff3dSpec:
    def test_default_bcs(self):
        bc_x, bc_y, bc_z = ConvDiff3dSpec(grid=_grid(5)).bcs
        assert bc_x.left.kind.value == "dirichlet"
        assert bc_x.right.kind.value == "neumann"
        assert bc_y.homogeneous_dirichlet and bc_z.homogeneous_dirichlet

    def test_needs_three_axes(self):
        with pytest.raises(ParameterError):
            ConvDiff3dSpec(grid=make_grid((5, 5), "uniform"))

    def test_unknowns(self):
        assert ConvDiff3dSpec(grid=make_grid((5, 6, 7), "uniform")).unknowns == 3 * 4 * 5


class TestAssemble:
    def test_shapes(self):
        p = assemble_convdiff3d(ConvDiff3dSpec(grid=make_grid((5, 6, 7), "chebyshev-lobatto")))
        assert p.g.shape == (12, 12)
        assert p.r.shape == (5, 5)
        assert p.q.shape == (12, 5)

    def test_cap(self):
        configure(convdiff3d_unknown_cap=100)
        with pytest.raises(ProblemTooLargeError) as exc:
            assemble_convdiff3d(ConvDiff3dSpec(grid=_grid(7)))
        assert exc.value.contract == "pde_problems"


class TestSolve:
    def test_zero_problem(self):
        sol = solve_convdiff3d(ConvDiff3dSpec(grid=_grid(5)))
        assert sol.field.shape == (5, 5, 5)
        assert np.all(sol.field == 0.0)

    @pytest.mark.parametrize("beta, gamma", [(1.0, 1.0), (0.3, 2.0)])
    def test_matches_flat_system(self, beta, gamma):
        spec = ConvDiff3dSpec(grid=_grid(5), beta=beta, gamma=gamma, source=1.0)
        sol = solve_convdiff3d(spec)
        ref = _flat_oracle(spec)
        assert np.max(np.abs(sol.interior - ref)) <= 1e-9 * max(1.0, np.abs(ref).max())

    def test_inflow_residual(self):
        bcs = (BoundaryCondition(dirichlet(1.0), neumann(0.0)), BoundaryCondition(), BoundaryCondition())
        spec = ConvDiff3dSpec(grid=_grid(7), beta=0.5, gamma=0.5, bcs=bcs)
        sol = solve_convdiff3d(spec)
        assert np.allclose(sol.field[0, 1:-1, 1:-1], 1.0)
        assert np.max(np.abs(convdiff3d_residual(spec, sol.field))) < 1e-7

    def test_manufactured(self):
        sol = MANUFACTURED["convdiff3d"](_grid(9)).solve("bartels-stewart")
        assert sol.max_error < 1e-3

    def test_hessenberg_schur_agrees(self):
        case = MANUFACTURED["convdiff3d"](_grid(6), beta=0.5, gamma=2.0)
        bs = case.solve("bartels-stewart")
        hs = case.solve("hessenberg-schur")
        assert np.allclose(bs.field, hs.field, atol=1e-10)
