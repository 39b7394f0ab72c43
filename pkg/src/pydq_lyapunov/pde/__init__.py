"""PDE problem classes: Poisson, convection-diffusion (2-D, 3-D, transient)."""

from .base import PdeSolution, make_grid
from .convdiff import ConvDiffSpec, assemble_convdiff, convdiff_residual, solve_convdiff
from .convdiff3d import ConvDiff3dSpec, assemble_convdiff3d, convdiff3d_residual, solve_convdiff3d
from .manufactured import MANUFACTURED, ManufacturedCase
from .poisson import PoissonSpec, assemble_poisson, poisson_residual, solve_poisson
from .transient import TimeScheme, Trajectory, TransientSpec, step_transient

__all__ = [
    "PdeSolution",
    "make_grid",
    "PoissonSpec",
    "assemble_poisson",
    "solve_poisson",
    "poisson_residual",
    "ConvDiffSpec",
    "assemble_convdiff",
    "solve_convdiff",
    "convdiff_residual",
    "ConvDiff3dSpec",
    "assemble_convdiff3d",
    "solve_convdiff3d",
    "convdiff3d_residual",
    "TimeScheme",
    "TransientSpec",
    "Trajectory",
    "step_transient",
    "MANUFACTURED",
    "ManufacturedCase",
]
