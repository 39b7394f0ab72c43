"""Collocation point sets and differential-quadrature weighting matrices.

For points ``x_0 < ... < x_{N-1}`` on [0, 1], the first-derivative weights
are the derivatives of the Lagrange cardinal polynomials at the points::

    A_ij = P(x_i) / ((x_i - x_j) P(x_j)),   i != j,   P(x_i) = prod_{k != i} (x_i - x_k)
    A_ii = -sum_{j != i} A_ij

and the second-derivative weights are ``B = A @ A``. Both are exact for
polynomials up to degree N-1.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum

import numpy as np

from ..config import get_settings
from ..core.linalg import DenseMatrix, matmul
from ..errors import IllConditionedGridError, ParameterError

logger = logging.getLogger(__name__)

_SYMMETRY_TOL = 1e-14


class GridKind(str, Enum):
    """How an axis point set was generated."""

    UNIFORM = "uniform"
    CHEBYSHEV_LOBATTO = "chebyshev-lobatto"
    EXPLICIT = "explicit"


@dataclass(frozen=True)
class AxisGrid:
    """Strictly increasing point set on [0, 1] with exact endpoints."""

    points: np.ndarray
    kind: GridKind

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=np.float64)
        if pts.ndim != 1 or pts.size < 2:
            raise ParameterError("An axis needs at least 2 points", contract="dq_operators")
        if pts[0] != 0.0 or pts[-1] != 1.0:
            raise ParameterError(
                f"Axis endpoints must be exactly 0 and 1, got {pts[0]!r} and {pts[-1]!r}",
                contract="dq_operators",
            )
        if not np.all(np.diff(pts) > 0.0):
            raise ParameterError("Axis points must be strictly increasing", contract="dq_operators")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    @property
    def n(self) -> int:
        """Total point count N (boundaries included)."""
        return self.points.size

    @property
    def interior(self) -> np.ndarray:
        return self.points[1:-1]

    @property
    def symmetric(self) -> bool:
        """True iff ``x_i + x_{N-1-i} = 1`` within 1e-14."""
        return bool(np.all(np.abs(self.points + self.points[::-1] - 1.0) <= _SYMMETRY_TOL))


@dataclass(frozen=True)
class GridSpec:
    """Per-axis point sets of a tensor-product grid."""

    axes: tuple[AxisGrid, ...]

    def __post_init__(self):
        object.__setattr__(self, "axes", tuple(self.axes))
        if not self.axes:
            raise ParameterError("A grid needs at least one axis", contract="dq_operators")

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(axis.n for axis in self.axes)

    @property
    def interior_shape(self) -> tuple[int, ...]:
        return tuple(axis.n - 2 for axis in self.axes)

    @property
    def symmetric(self) -> tuple[bool, ...]:
        return tuple(axis.symmetric for axis in self.axes)


def _check_count(n: int) -> None:
    if n < 2:
        raise ParameterError(f"Need at least 2 points per axis, got {n}", contract="dq_operators")


def chebyshev_lobatto_points(n: int) -> AxisGrid:
    """``x_i = (1 - cos(pi i / (n-1))) / 2``, mirrored to be exactly symmetric."""
    _check_count(n)
    pts = 0.5 * (1.0 - np.cos(np.pi * np.arange(n) / (n - 1)))
    half = n // 2
    pts[n - half:] = 1.0 - pts[:half][::-1]
    if n % 2 == 1:
        pts[half] = 0.5
    pts[0], pts[-1] = 0.0, 1.0
    return AxisGrid(pts, GridKind.CHEBYSHEV_LOBATTO)


def uniform_points(n: int) -> AxisGrid:
    """``x_i = i / (n-1)``."""
    _check_count(n)
    return AxisGrid(np.arange(n) / (n - 1), GridKind.UNIFORM)


def explicit_points(values) -> AxisGrid:
    """Validate a user-supplied point set."""
    return AxisGrid(np.asarray(values, dtype=np.float64), GridKind.EXPLICIT)


def make_axis(kind: str | GridKind, n: int) -> AxisGrid:
    """Build an axis of the named kind."""
    kind = GridKind(kind)
    if kind is GridKind.UNIFORM:
        return uniform_points(n)
    if kind is GridKind.CHEBYSHEV_LOBATTO:
        return chebyshev_lobatto_points(n)
    raise ParameterError("Explicit axes need their point values", contract="dq_operators")


@dataclass(frozen=True)
class DqOperator:
    """Full N x N first (``a``) and second (``b``) derivative weights."""

    a: DenseMatrix
    b: DenseMatrix
    grid: AxisGrid

    @property
    def n(self) -> int:
        return self.grid.n


def build_dq_operator(grid: AxisGrid) -> DqOperator:
    """Compute DQ weighting matrices for *grid*.

    Raises:
        IllConditionedGridError: Two points closer than ``settings.grid_min_spacing``.
    """
    x = grid.points
    spacing = float(np.min(np.diff(x)))
    if spacing < get_settings().grid_min_spacing:
        raise IllConditionedGridError(f"Grid points are nearly coincident (min spacing {spacing:.3e})")

    diff = x[:, None] - x[None, :]
    np.fill_diagonal(diff, 1.0)
    prod = np.prod(diff, axis=1)
    a = prod[:, None] / (diff * prod[None, :])
    np.fill_diagonal(a, 0.0)
    np.fill_diagonal(a, -a.sum(axis=1))
    b = matmul(a, a)
    logger.debug(f"DQ operator: N={grid.n} kind={grid.kind.value}")
    return DqOperator(a=a, b=b, grid=grid)
