"""2-D steady convection-diffusion in its Lyapunov form.

The transformed equation is

    alpha d2phi/dx2 + beta d2phi/dy2 - phi / (4 alpha) + S = 0

which reduces to ``(alpha B_bar_x - I/(4 alpha)) phi + beta phi B_bar_y^T = Q``
with ``Q = -(S + alpha B0x + beta B0y^T)``.
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
class ConvDiffSpec:
    """Steady convection-diffusion problem.

    Args:
        grid: Two-axis grid.
        alpha: Non-zero coefficient (enters as ``1/(4 alpha)``).
        beta: y-diffusion coefficient.
        source: Optional source S.
        bcs: ``(bc_x, bc_y)``; defaults to homogeneous Dirichlet.
    """

    grid: GridSpec
    alpha: float = 1.0
    beta: float = 1.0
    source: Source = None
    bcs: tuple[BoundaryCondition, BoundaryCondition] = field(
        default_factory=lambda: (BoundaryCondition(), BoundaryCondition())
    )

    def __post_init__(self):
        _check_grid(self.grid, 2)
        object.__setattr__(self, "bcs", _check_bcs(self.bcs, 2))
        if self.alpha == 0 or not np.isfinite(self.alpha):
            raise ParameterError(f"alpha must be finite and non-zero, got {self.alpha}", contract="pde_problems")
        if not np.isfinite(self.beta):
            raise ParameterError(f"beta must be finite, got {self.beta}", contract="pde_problems")


def assemble_convdiff_parts(spec: ConvDiffSpec) -> AssembledProblem:
    red_x, red_y = reduce_axes(spec.grid, spec.bcs)
    n, m = red_x.n, red_y.n
    off_x, off_y = build_offset_matrices(red_x, red_y, n, m)
    s = sample_interior(spec.source, spec.grid.axes)

    g = spec.alpha * red_x.b_bar
    g[np.diag_indices(n)] -= 1.0 / (4.0 * spec.alpha)
    r = spec.beta * red_y.b_bar.T
    q = -(s + spec.alpha * off_x.b0 + spec.beta * off_y.b0.T)
    logger.debug(f"Assembled convection-diffusion problem: {n}x{m}, alpha={spec.alpha}, beta={spec.beta}")
    return AssembledProblem(problem=SylvesterProblem(g=g, r=r, q=q), reduced=(red_x, red_y), source=s)


def assemble_convdiff(spec: ConvDiffSpec) -> SylvesterProblem:
    """``G = alpha B_bar_x - I/(4 alpha)``, ``R = beta B_bar_y^T``, ``Q = -(S + alpha B0x + beta B0y^T)``."""
    return assemble_convdiff_parts(spec).problem


def solve_convdiff(
    spec: ConvDiffSpec,
    method: str = "auto",
    exact: Callable[..., np.ndarray] | None = None,
) -> PdeSolution:
    """Assemble, solve and reconstruct; see ``solve_poisson``."""
    parts = assemble_convdiff_parts(spec)
    red_x, red_y = parts.reduced
    solution = dispatch(parts.problem, method)
    return PdeSolution(
        field=reconstruct_full_field(solution.x, red_x, red_y),
        interior=solution.x,
        report=solution.report,
        problem=parts.problem,
        grid=spec.grid,
        max_error=max_interior_error(solution.x, exact, spec.grid.axes),
    )


def convdiff_residual(spec: ConvDiffSpec, full: np.ndarray) -> np.ndarray:
    """Interior residual of the full-grid DQ equations."""
    red_x, red_y = reduce_axes(spec.grid, spec.bcs)
    s = sample_interior(spec.source, spec.grid.axes)
    lhs = spec.alpha * red_x.source.b @ full + spec.beta * full @ red_y.source.b.T - full / (4.0 * spec.alpha)
    return lhs[1:-1, 1:-1] + s
