"""Manufactured sin-product solutions for convergence checks.

Every case uses homogeneous Dirichlet data on all faces, so the exact
field vanishes on the boundary and the source alone drives the solution.
"""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass

import numpy as np

from ..dq.boundary import BoundaryCondition
from ..dq.operators import GridSpec
from .base import PdeSolution
from .convdiff import ConvDiffSpec, solve_convdiff
from .convdiff3d import ConvDiff3dSpec, solve_convdiff3d
from .poisson import PoissonSpec, solve_poisson

PI = np.pi


def sin_product(*coords: np.ndarray) -> np.ndarray:
    """``prod_k sin(pi x_k)``."""
    out = np.ones_like(coords[0], dtype=np.float64)
    for c in coords:
        out = out * np.sin(PI * c)
    return out


@dataclass(frozen=True, eq=False)
class ManufacturedCase:
    spec: PoissonSpec | ConvDiffSpec | ConvDiff3dSpec
    exact: Callable[..., np.ndarray]
    solver: Callable[..., PdeSolution]

    def solve(self, method: str = "auto") -> PdeSolution:
        return self.solver(self.spec, method=method, exact=self.exact)


def manufactured_poisson(grid: GridSpec, beta: float = 1.0) -> ManufacturedCase:
    """``phi = sin(pi x) sin(pi y)`` with ``S = pi^2 (1 + beta^2) phi``."""

    def source(x, y):
        return PI**2 * (1.0 + beta * beta) * sin_product(x, y)

    spec = PoissonSpec(grid=grid, beta=beta, source=source)
    return ManufacturedCase(spec=spec, exact=sin_product, solver=solve_poisson)


def manufactured_convdiff(grid: GridSpec, alpha: float = 1.0, beta: float = 1.0) -> ManufacturedCase:
    """``phi = sin(pi x) sin(pi y)`` with ``S = (alpha pi^2 + beta pi^2 + 1/(4 alpha)) phi``."""

    def source(x, y):
        return (alpha * PI**2 + beta * PI**2 + 1.0 / (4.0 * alpha)) * sin_product(x, y)

    spec = ConvDiffSpec(grid=grid, alpha=alpha, beta=beta, source=source)
    return ManufacturedCase(spec=spec, exact=sin_product, solver=solve_convdiff)


def manufactured_convdiff3d(grid: GridSpec, beta: float = 1.0, gamma: float = 1.0) -> ManufacturedCase:
    """``c = sin(pi x) sin(pi y) sin(pi z)`` with Dirichlet data on both x faces."""

    def source(x, y, z):
        return PI * np.cos(PI * x) * sin_product(y, z) + (beta + gamma) * PI**2 * sin_product(x, y, z)

    spec = ConvDiff3dSpec(
        grid=grid,
        beta=beta,
        gamma=gamma,
        source=source,
        bcs=(BoundaryCondition(), BoundaryCondition(), BoundaryCondition()),
    )
    return ManufacturedCase(spec=spec, exact=sin_product, solver=solve_convdiff3d)


MANUFACTURED: dict[str, Callable[..., ManufacturedCase]] = {
    "poisson": manufactured_poisson,
    "convdiff": manufactured_convdiff,
    "convdiff3d": manufactured_convdiff3d,
}
