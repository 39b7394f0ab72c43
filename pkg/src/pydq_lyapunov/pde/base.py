"""Shared pieces of the PDE problem classes: sources, grids, solutions."""

from __future__ import annotations

import logging
from collections.abc import Callable
from dataclasses import dataclass, field

import numpy as np

from ..config import get_settings
from ..core.linalg import DenseMatrix
from ..dq.boundary import BoundaryCondition, ReducedOperator, reduce_operator
from ..dq.operators import AxisGrid, GridSpec, build_dq_operator, make_axis
from ..errors import ParameterError, ShapeError
from ..sylvester import SolveReport, SylvesterProblem, SylvesterSolution, solve_sylvester

logger = logging.getLogger(__name__)

# A source term: None (zero), a constant, an interior-grid array, or f(x, y[, z]).
Source = float | np.ndarray | Callable[..., np.ndarray] | None


def make_grid(shape: tuple[int, ...], kind: str | None = None) -> GridSpec:
    """Tensor-product grid with *shape* points per axis (default kind from settings)."""
    kind = kind or get_settings().default_grid
    return GridSpec(tuple(make_axis(kind, n) for n in shape))


def _check_grid(grid: GridSpec, dims: int, contract: str = "pde_problems") -> None:
    if len(grid.axes) != dims:
        raise ParameterError(f"Expected a {dims}-axis grid, got {len(grid.axes)} axes", contract=contract)
    for axis in grid.axes:
        if axis.n < 3:
            raise ParameterError(f"Each axis needs at least 3 points, got {axis.n}", contract=contract)


def _check_bcs(bcs: tuple[BoundaryCondition, ...], dims: int) -> tuple[BoundaryCondition, ...]:
    bcs = tuple(bcs)
    if len(bcs) != dims:
        raise ParameterError(f"Expected {dims} boundary conditions, got {len(bcs)}", contract="pde_problems")
    return bcs


def interior_mesh(axes: tuple[AxisGrid, ...]) -> tuple[np.ndarray, ...]:
    """``ij``-indexed coordinate arrays over interior points."""
    return tuple(np.meshgrid(*(a.interior for a in axes), indexing="ij"))


def full_mesh(axes: tuple[AxisGrid, ...]) -> tuple[np.ndarray, ...]:
    return tuple(np.meshgrid(*(a.points for a in axes), indexing="ij"))


def sample_interior(source: Source, axes: tuple[AxisGrid, ...]) -> np.ndarray:
    """Source values on the interior grid.

    Raises:
        ShapeError: An array source does not match the interior grid.
    """
    shape = tuple(a.n - 2 for a in axes)
    if source is None:
        return np.zeros(shape)
    if callable(source):
        values = np.asarray(source(*interior_mesh(axes)), dtype=np.float64)
        return np.broadcast_to(values, shape).copy()
    values = np.asarray(source, dtype=np.float64)
    if values.ndim == 0:
        return np.full(shape, float(values))
    if values.shape != shape:
        raise ShapeError(f"Source has shape {values.shape}, interior grid is {shape}")
    return values.copy()


def reduce_axes(grid: GridSpec, bcs: tuple[BoundaryCondition, ...]) -> tuple[ReducedOperator, ...]:
    """Build and reduce the DQ operator of every axis."""
    return tuple(reduce_operator(build_dq_operator(axis), bc) for axis, bc in zip(grid.axes, bcs, strict=True))


@dataclass(frozen=True, eq=False)
class AssembledProblem:
    """A Sylvester problem plus what is needed to rebuild the full field."""

    problem: SylvesterProblem
    reduced: tuple[ReducedOperator, ...]
    source: np.ndarray


@dataclass(frozen=True, eq=False)
class PdeSolution:
    """Full-grid field of a steady problem.

    Attributes:
        field: Field on every grid point, boundaries included.
        interior: Solved interior values.
        report: Report of the underlying Sylvester solve.
        problem: The assembled Sylvester problem.
        grid: The grid the field lives on.
        max_error: Max interior error against an exact field, when one was given.
    """

    field: np.ndarray
    interior: np.ndarray
    report: SolveReport
    problem: SylvesterProblem
    grid: GridSpec
    max_error: float | None = None
    extra: dict = field(default_factory=dict)


def dispatch(problem: SylvesterProblem, method: str) -> SylvesterSolution:
    """Solve an assembled problem; ``auto`` tries the centro split first."""
    solution = solve_sylvester(problem, method)
    logger.debug(
        f"Solved {problem.n}x{problem.m} problem with {solution.report.method} "
        f"(residual {solution.report.relative_residual:.2e})"
    )
    return solution


def max_interior_error(
    interior: DenseMatrix,
    exact: Callable[..., np.ndarray] | None,
    axes: tuple[AxisGrid, ...],
) -> float | None:
    if exact is None:
        return None
    reference = np.asarray(exact(*interior_mesh(axes)), dtype=np.float64)
    return float(np.max(np.abs(interior - reference)))
