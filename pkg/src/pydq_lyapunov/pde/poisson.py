"""2-D Poisson equation as a Lyapunov matrix equation.

    d2phi/dx2 + beta^2 d2phi/dy2 + S = 0      on [0,1]^2

With the reduced operators this becomes::

    B_bar_x phi + beta^2 phi B_bar_y^T + H = 0,   H = S + B0x + beta^2 B0y^T

i.e. ``G = B_bar_x``, ``R = beta^2 B_bar_y^T``, ``Q = -H``. No extra
equations are needed for the boundary values.
"""

from __future__ import annotations

import logging
from collections.abc import Callable
from dataclasses import dataclass, field

import numpy as np

from ..dq.boundary import BoundaryCondition, build_offset_matrices, reconstruct_full_field
from ..dq.operators import GridSpec
from ..errors import ParameterError
from ..sylvester import SylvesterProblem
from .base import (
    AssembledProblem,
    PdeSolution,
    Source,
    _check_bcs,
    _check_grid,
    dispatch,
    max_interior_error,
    reduce_axes,
    sample_interior,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class PoissonSpec:
    """Poisson problem on a 2-D grid.

    Args:
        grid: Two-axis grid.
        beta: Aspect ratio, > 0.
        source: Strength S (see ``pde.base.Source``).
        bcs: ``(bc_x, bc_y)``; defaults to homogeneous Dirichlet.
    """

    grid: GridSpec
    beta: float = 1.0
    source: Source = None
    bcs: tuple[BoundaryCondition, BoundaryCondition] = field(
        default_factory=lambda: (BoundaryCondition(), BoundaryCondition())
    )

    def __post_init__(self):
        _check_grid(self.grid, 2)
        object.__setattr__(self, "bcs", _check_bcs(self.bcs, 2))
        if not self.beta > 0:
            raise ParameterError(f"beta must be > 0, got {self.beta}", contract="pde_problems")


def assemble_poisson_parts(spec: PoissonSpec) -> AssembledProblem:
    red_x, red_y = reduce_axes(spec.grid, spec.bcs)
    n, m = red_x.n, red_y.n
    off_x, off_y = build_offset_matrices(red_x, red_y, n, m)
    s = sample_interior(spec.source, spec.grid.axes)
    beta2 = spec.beta * spec.beta
    h = s + off_x.b0 + beta2 * off_y.b0.T
    problem = SylvesterProblem(g=red_x.b_bar, r=beta2 * red_y.b_bar.T, q=-h)
    logger.debug(f"Assembled Poisson problem: {n}x{m} interior, beta={spec.beta}")
    return AssembledProblem(problem=problem, reduced=(red_x, red_y), source=s)


def assemble_poisson(spec: PoissonSpec) -> SylvesterProblem:
    """``G = B_bar_x``, ``R = beta^2 B_bar_y^T``, ``Q = -(S + B0x + beta^2 B0y^T)``.

    Raises:
        UnsupportedBoundaryError, SingularEliminationError: From boundary reduction.
    """
    return assemble_poisson_parts(spec).problem


def solve_poisson(
    spec: PoissonSpec,
    method: str = "auto",
    exact: Callable[..., np.ndarray] | None = None,
) -> PdeSolution:
    """Assemble, solve and reconstruct the full-grid field.

    Args:
        spec: Problem description.
        method: Solver tag, or ``"auto"`` (centro split when both operands
            are centrosymmetric, else Bartels-Stewart).
        exact: Optional exact field ``f(x, y)`` for error measurement.
    """
    parts = assemble_poisson_parts(spec)
    red_x, red_y = parts.reduced
    solution = dispatch(parts.problem, method)
    full = reconstruct_full_field(solution.x, red_x, red_y)
    return PdeSolution(
        field=full,
        interior=solution.x,
        report=solution.report,
        problem=parts.problem,
        grid=spec.grid,
        max_error=max_interior_error(solution.x, exact, spec.grid.axes),
    )


def poisson_residual(spec: PoissonSpec, full: np.ndarray) -> np.ndarray:
    """Interior residual of the full-grid DQ equations for a reconstructed field."""
    red_x, red_y = reduce_axes(spec.grid, spec.bcs)
    bx, by = red_x.source.b, red_y.source.b
    s = sample_interior(spec.source, spec.grid.axes)
    lap = bx @ full + spec.beta**2 * full @ by.T
    return lap[1:-1, 1:-1] + s
