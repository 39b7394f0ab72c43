"""Boundary elimination for DQ operators.

Each axis carries a Dirichlet or Neumann condition on its two faces, with
constant data. Boundary values are affine functions of the interior values:

    Dirichlet  phi_0 = h
    Neumann    phi_{N-1} = (q - A_{N-1,0} h - sum_j A_{N-1,j} phi_j) / A_{N-1,N-1}

Substituting them into the interior rows of ``A`` and ``B`` gives the
modified (N-2)x(N-2) matrices ``a_bar``/``b_bar`` and offset vectors.
A Neumann left face is handled by the mirrored formula on row 0.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Literal

import numpy as np

from ..config import get_settings
from ..core.linalg import DenseMatrix, inf_norm
from ..errors import ShapeError, SingularEliminationError, UnsupportedBoundaryError
from .operators import DqOperator

logger = logging.getLogger(__name__)


class BoundaryKind(str, Enum):
    DIRICHLET = "dirichlet"
    NEUMANN = "neumann"


@dataclass(frozen=True)
class FaceCondition:
    """Condition on one face: a value ``h`` (Dirichlet) or a slope ``q`` (Neumann)."""

    kind: BoundaryKind = BoundaryKind.DIRICHLET
    value: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "kind", BoundaryKind(self.kind))
        object.__setattr__(self, "value", float(self.value))


def dirichlet(value: float = 0.0) -> FaceCondition:
    return FaceCondition(BoundaryKind.DIRICHLET, value)


def neumann(value: float = 0.0) -> FaceCondition:
    return FaceCondition(BoundaryKind.NEUMANN, value)


@dataclass(frozen=True)
class BoundaryCondition:
    """Conditions on the ``left`` (x=0) and ``right`` (x=1) faces of one axis.

    At least one face must be Dirichlet.
    """

    left: FaceCondition = field(default_factory=FaceCondition)
    right: FaceCondition = field(default_factory=FaceCondition)

    def __post_init__(self):
        if self.left.kind is BoundaryKind.NEUMANN and self.right.kind is BoundaryKind.NEUMANN:
            raise UnsupportedBoundaryError(
                "Neumann conditions on both faces of an axis are not supported; "
                "at least one face must be Dirichlet"
            )

    @property
    def homogeneous_dirichlet(self) -> bool:
        return all(f.kind is BoundaryKind.DIRICHLET and f.value == 0.0 for f in (self.left, self.right))


@dataclass(frozen=True)
class BoundaryRecovery:
    """Affine maps ``phi_face = const + coeffs @ phi_interior`` for both faces."""

    left_const: float
    left_coeffs: np.ndarray
    right_const: float
    right_coeffs: np.ndarray

    def recover(self, interior: np.ndarray, axis: int = 0) -> tuple[np.ndarray, np.ndarray]:
        """Boundary slices of *interior* along *axis* (the axis is dropped)."""
        moved = np.moveaxis(interior, axis, 0)
        left = self.left_const + np.tensordot(self.left_coeffs, moved, axes=(0, 0))
        right = self.right_const + np.tensordot(self.right_coeffs, moved, axes=(0, 0))
        return left, right


@dataclass(frozen=True)
class ReducedOperator:
    """Interior-only operators after boundary elimination."""

    a_bar: DenseMatrix
    b_bar: DenseMatrix
    a_offset: np.ndarray
    b_offset: np.ndarray
    recovery: BoundaryRecovery
    bc: BoundaryCondition
    source: DqOperator

    @property
    def n(self) -> int:
        return self.a_bar.shape[0]


def _face_map(
    a: DenseMatrix,
    row: int,
    other: int,
    other_const: float,
    face: FaceCondition,
    pivot_tol: float,
) -> tuple[float, np.ndarray]:
    """Affine map (const, coeffs) of the boundary value at *row*."""
    n_int = a.shape[0] - 2
    if face.kind is BoundaryKind.DIRICHLET:
        return face.value, np.zeros(n_int)
    pivot = a[row, row]
    if abs(pivot) <= pivot_tol * inf_norm(a):
        raise SingularEliminationError(
            f"Neumann elimination pivot A[{row},{row}] = {pivot:.3e} is too small"
        )
    const = (face.value - a[row, other] * other_const) / pivot
    coeffs = -a[row, 1:-1] / pivot
    return const, coeffs


def reduce_operator(op: DqOperator, bc: BoundaryCondition) -> ReducedOperator:
    """Eliminate boundary values from the DQ operator.

    Raises:
        UnsupportedBoundaryError: Neumann on both faces.
        SingularEliminationError: Neumann pivot below
            ``settings.neumann_pivot_tol * ||A||_inf``.
    """
    a, b = op.a, op.b
    last = a.shape[0] - 1
    if last < 2:
        raise ShapeError(f"Boundary elimination needs at least 3 points, got {last + 1}")
    tol = get_settings().neumann_pivot_tol

    # Dirichlet faces first: a Neumann face needs the opposite face's value.
    if bc.left.kind is BoundaryKind.DIRICHLET:
        left = _face_map(a, 0, last, 0.0, bc.left, tol)
        right = _face_map(a, last, 0, left[0], bc.right, tol)
    else:
        right = _face_map(a, last, 0, 0.0, bc.right, tol)
        left = _face_map(a, 0, last, right[0], bc.left, tol)
    recovery = BoundaryRecovery(left[0], left[1], right[0], right[1])

    def _reduce(m: DenseMatrix) -> tuple[DenseMatrix, np.ndarray]:
        bar = m[1:-1, 1:-1].copy()
        if bc.left.kind is BoundaryKind.NEUMANN:
            bar += np.outer(m[1:-1, 0], recovery.left_coeffs)
        if bc.right.kind is BoundaryKind.NEUMANN:
            bar += np.outer(m[1:-1, -1], recovery.right_coeffs)
        offset = m[1:-1, 0] * recovery.left_const + m[1:-1, -1] * recovery.right_const
        return bar, offset

    a_bar, a_offset = _reduce(a)
    b_bar, b_offset = _reduce(b)
    logger.debug(
        f"Reduced N={op.n} operator with {bc.left.kind.value}/{bc.right.kind.value} faces"
    )
    return ReducedOperator(
        a_bar=a_bar,
        b_bar=b_bar,
        a_offset=a_offset,
        b_offset=b_offset,
        recovery=recovery,
        bc=bc,
        source=op,
    )


@dataclass(frozen=True)
class OffsetMatrices:
    """Column-constant stacks of the offset vectors (every column equals it)."""

    a0: DenseMatrix
    b0: DenseMatrix


def stack_offsets(reduced: ReducedOperator, columns: int) -> OffsetMatrices:
    """Stack the offset vectors of *reduced* into ``n x columns`` matrices."""
    n = reduced.n
    return OffsetMatrices(
        a0=np.repeat(reduced.a_offset.reshape(n, 1), columns, axis=1),
        b0=np.repeat(reduced.b_offset.reshape(n, 1), columns, axis=1),
    )


def build_offset_matrices(
    red_x: ReducedOperator,
    red_y: ReducedOperator,
    n: int,
    m: int,
) -> tuple[OffsetMatrices, OffsetMatrices]:
    """Offset matrices of the matrix-form DQ formulas.

    With ``psi`` the n x m interior field::

        d2psi/dx2 = b_bar_x @ psi + B0x          (B0x:  n x m)
        d2psi/dy2 = psi @ b_bar_y.T + B0y.T      (B0y:  m x n)

    and likewise for first derivatives with ``a``.

    Returns:
        ``(x_offsets, y_offsets)`` with shapes n x m and m x n.

    Raises:
        ShapeError: Reduced operator sizes disagree with ``n``/``m``.
    """
    if red_x.n != n or red_y.n != m:
        raise ShapeError(
            f"Offset shape {n}x{m} does not match reduced operators ({red_x.n}, {red_y.n})"
        )
    return stack_offsets(red_x, m), stack_offsets(red_y, n)


def reconstruct_axis(interior: np.ndarray, reduced: ReducedOperator, axis: int) -> np.ndarray:
    """Append the recovered boundary slices along *axis*."""
    if interior.shape[axis] != reduced.n:
        raise ShapeError(
            f"Axis {axis} has {interior.shape[axis]} interior points, operator expects {reduced.n}"
        )
    left, right = reduced.recovery.recover(interior, axis)
    return np.concatenate(
        [np.expand_dims(left, axis), interior, np.expand_dims(right, axis)],
        axis=axis,
    )


def reconstruct_full_field(
    interior: DenseMatrix,
    red_x: ReducedOperator,
    red_y: ReducedOperator,
    order: Literal["xy", "yx"] = "xy",
) -> DenseMatrix:
    """Full N_x x N_y field from interior values and both axes' recovery maps.

    Corner values come from the axis reconstructed last.

    Args:
        interior: Interior field, ``red_x.n x red_y.n``.
        red_x: Reduced operator of the x axis.
        red_y: Reduced operator of the y axis.
        order: Axis order; the second axis sets the four corners. With
            inconsistent corner data "xy" and "yx" give different corners.

    Raises:
        ShapeError: ``interior`` is not ``red_x.n x red_y.n``.
    """
    if interior.ndim != 2 or interior.shape != (red_x.n, red_y.n):
        raise ShapeError(
            f"Interior field has shape {interior.shape}, expected {(red_x.n, red_y.n)}"
        )
    if order == "xy":
        return reconstruct_axis(reconstruct_axis(interior, red_x, 0), red_y, 1)
    if order == "yx":
        return reconstruct_axis(reconstruct_axis(interior, red_y, 1), red_x, 0)
    raise ValueError(f"Unknown reconstruction order: {order!r}")
