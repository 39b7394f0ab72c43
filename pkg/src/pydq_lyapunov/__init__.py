"""
pydq-lyapunov - DQ Poisson and convection-diffusion solvers via Sylvester equations.

Usage:
    import pydq_lyapunov as dq

    # Poisson problem with a unit source on an 11 x 11 Chebyshev grid
    grid = dq.make_grid((11, 11), "chebyshev-lobatto")
    spec = dq.PoissonSpec(grid=grid, source=1.0)
    solution = dq.solve_poisson(spec)

    # Pick the solver explicitly
    solution = dq.solve_poisson(spec, method="hessenberg-schur")

    # Cost ratios against Kronecker + Gauss
    dq.run_ratio_table([7, 11])
"""

from importlib.metadata import version as _get_version

from .bench import BenchCase, records_frame, run_bench, run_benches, run_convergence, run_ratio_table
from .config import configure, get_settings
from .core.io import export_field_csv, export_records_csv, export_report_json, field_frame
from .core.linalg import FlopCounter, lu_solve, real_schur
from .dq import BoundaryCondition, GridSpec, build_dq_operator, dirichlet, make_axis, neumann, reduce_operator
from .errors import DqLyapunovError
from .pde import (
    ConvDiff3dSpec,
    ConvDiffSpec,
    PoissonSpec,
    TransientSpec,
    make_grid,
    solve_convdiff,
    solve_convdiff3d,
    solve_poisson,
    step_transient,
)
from .runconfig import RunConfig
from .sylvester import SylvesterProblem, flop_model, solve_sylvester

__version__ = _get_version("pydq-lyapunov")

__all__ = [
    "__version__",
    # Configuration
    "configure",
    "get_settings",
    "RunConfig",
    "DqLyapunovError",
    # Linear algebra
    "FlopCounter",
    "lu_solve",
    "real_schur",
    # DQ operators
    "GridSpec",
    "make_axis",
    "make_grid",
    "build_dq_operator",
    "BoundaryCondition",
    "dirichlet",
    "neumann",
    "reduce_operator",
    # Solvers
    "SylvesterProblem",
    "solve_sylvester",
    "flop_model",
    # Problems
    "PoissonSpec",
    "solve_poisson",
    "ConvDiffSpec",
    "solve_convdiff",
    "ConvDiff3dSpec",
    "solve_convdiff3d",
    "TransientSpec",
    "step_transient",
    # Benchmarks
    "BenchCase",
    "run_bench",
    "run_benches",
    "run_ratio_table",
    "run_convergence",
    "records_frame",
    # Export
    "field_frame",
    "export_field_csv",
    "export_records_csv",
    "export_report_json",
]
