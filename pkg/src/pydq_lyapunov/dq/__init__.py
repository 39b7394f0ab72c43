"""Differential-quadrature operators and boundary elimination."""

from .boundary import (
    BoundaryCondition,
    BoundaryKind,
    FaceCondition,
    ReducedOperator,
    build_offset_matrices,
    dirichlet,
    neumann,
    reconstruct_full_field,
    reduce_operator,
)
from .operators import (
    AxisGrid,
    DqOperator,
    GridKind,
    GridSpec,
    build_dq_operator,
    chebyshev_lobatto_points,
    explicit_points,
    make_axis,
    uniform_points,
)

__all__ = [
    "AxisGrid",
    "GridKind",
    "GridSpec",
    "DqOperator",
    "build_dq_operator",
    "chebyshev_lobatto_points",
    "uniform_points",
    "explicit_points",
    "make_axis",
    "BoundaryKind",
    "FaceCondition",
    "BoundaryCondition",
    "ReducedOperator",
    "dirichlet",
    "neumann",
    "reduce_operator",
    "build_offset_matrices",
    "reconstruct_full_field",
]
