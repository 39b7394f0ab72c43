"""3-D steady convection-diffusion through the Kronecker product.

    dc/dx = beta d2c/dy2 + gamma d2c/dz2 + S

Each z-slice ``C_k`` (nx x ny) is stacked column-wise into a long vector,
giving the (nx*ny) x nz unknown ``C_hat``. Then

    [I_y kron A_bar_x - beta B_bar_y kron I_x] C_hat - gamma C_hat B_bar_z^T
        = gamma B0z^T + S - Q3,     Q3 = A0x - beta B0y

which is again a Sylvester equation with ``R = -gamma B_bar_z^T``.
"""

from __future__ import annotations

import logging
from collections.abc import Callable
from dataclasses import dataclass, field

import numpy as np

from ..config import get_settings
from ..core.linalg import kron
from ..dq.boundary import BoundaryCondition, dirichlet, neumann, reconstruct_axis
from ..dq.operators import GridSpec
from ..errors import ParameterError, ProblemTooLargeError
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


def _default_bcs() -> tuple[BoundaryCondition, BoundaryCondition, BoundaryCondition]:
    # Inflow value at x=0, zero gradient at the outflow face.
    return (BoundaryCondition(dirichlet(0.0), neumann(0.0)), BoundaryCondition(), BoundaryCondition())


@dataclass(frozen=True, eq=False)
class ConvDiff3dSpec:
    """3-D convection-diffusion problem.

    Args:
        grid: Three-axis grid.
        beta: y-diffusion coefficient.
        gamma: z-diffusion coefficient.
        source: Optional source S.
        bcs: ``(bc_x, bc_y, bc_z)``; x defaults to Dirichlet inflow and
            Neumann outflow, y and z to homogeneous Dirichlet.
    """

    grid: GridSpec
    beta: float = 1.0
    gamma: float = 1.0
    source: Source = None
    bcs: tuple[BoundaryCondition, BoundaryCondition, BoundaryCondition] = field(default_factory=_default_bcs)

    def __post_init__(self):
        _check_grid(self.grid, 3)
        object.__setattr__(self, "bcs", _check_bcs(self.bcs, 3))
        if not (np.isfinite(self.beta) and np.isfinite(self.gamma)):
            raise ParameterError("beta and gamma must be finite", contract="pde_problems")

    @property
    def unknowns(self) -> int:
        return int(np.prod(self.grid.interior_shape))


def assemble_convdiff3d_parts(spec: ConvDiff3dSpec) -> AssembledProblem:
    cap = get_settings().convdiff3d_unknown_cap
    if spec.unknowns > cap:
        raise ProblemTooLargeError(
            f"3-D problem has {spec.unknowns} interior unknowns, cap is {cap} (convdiff3d_unknown_cap)",
            contract="pde_problems",
        )
    red_x, red_y, red_z = reduce_axes(spec.grid, spec.bcs)
    nx, ny, nz = red_x.n, red_y.n, red_z.n

    g = kron(np.eye(ny), red_x.a_bar) - spec.beta * kron(red_y.b_bar, np.eye(nx))
    r = -spec.gamma * red_z.b_bar.T

    q3 = np.add.outer(red_x.a_offset, -spec.beta * red_y.b_offset).reshape(-1, order="F")
    s = sample_interior(spec.source, spec.grid.axes)
    rhs = (
        spec.gamma * np.tile(red_z.b_offset, (nx * ny, 1))
        + s.reshape(nx * ny, nz, order="F")
        - q3[:, None]
    )
    logger.debug(f"Assembled 3-D problem: {nx}x{ny}x{nz} interior, G is {nx * ny}x{nx * ny}")
    return AssembledProblem(
        problem=SylvesterProblem(g=g, r=r, q=rhs),
        reduced=(red_x, red_y, red_z),
        source=s,
    )


def assemble_convdiff3d(spec: ConvDiff3dSpec) -> SylvesterProblem:
    """``G = I_y kron A_bar_x - beta B_bar_y kron I_x``, ``R = -gamma B_bar_z^T``.

    Raises:
        ProblemTooLargeError: More interior unknowns than ``settings.convdiff3d_unknown_cap``.
    """
    return assemble_convdiff3d_parts(spec).problem


def solve_convdiff3d(
    spec: ConvDiff3dSpec,
    method: str = "bartels-stewart",
    exact: Callable[..., np.ndarray] | None = None,
) -> PdeSolution:
    """Solve and rebuild the ``N_x x N_y x N_z`` field."""
    parts = assemble_convdiff3d_parts(spec)
    red_x, red_y, red_z = parts.reduced
    solution = dispatch(parts.problem, method)
    interior = solution.x.reshape(red_x.n, red_y.n, red_z.n, order="F")
    full = interior
    for axis, reduced in enumerate((red_x, red_y, red_z)):
        full = reconstruct_axis(full, reduced, axis)
    return PdeSolution(
        field=full,
        interior=interior,
        report=solution.report,
        problem=parts.problem,
        grid=spec.grid,
        max_error=max_interior_error(interior, exact, spec.grid.axes),
    )


def convdiff3d_residual(spec: ConvDiff3dSpec, full: np.ndarray) -> np.ndarray:
    """Interior residual of the full-grid DQ equations."""
    red_x, red_y, red_z = reduce_axes(spec.grid, spec.bcs)
    s = sample_interior(spec.source, spec.grid.axes)
    cx = np.einsum("ia,ajk->ijk", red_x.source.a, full)
    cyy = np.einsum("jb,ibk->ijk", red_y.source.b, full)
    czz = np.einsum("kc,ijc->ijk", red_z.source.b, full)
    res = cx - spec.beta * cyy - spec.gamma * czz
    return res[1:-1, 1:-1, 1:-1] - s
