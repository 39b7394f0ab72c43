"""Sylvester/Lyapunov solvers and the solver registry."""

from ..errors import ParameterError
from .base import SolveReport, SylvesterProblem, SylvesterSolution, SylvesterSolver
from .centrosym import (
    CentroSplit,
    CentroSplitSolver,
    SymmetryClass,
    SymmetryTag,
    classify_symmetry,
    exchange_transform,
    solve_sylvester_centro,
    solve_with_fallback,
    split_centrosymmetric,
)
from .flops import METHODS, flop_model
from .solvers import (
    BartelsStewartFactorization,
    BartelsStewartSolver,
    HessenbergSchurSolver,
    KroneckerGaussSolver,
    assemble_kronecker_system,
    solve_bartels_stewart,
    solve_hessenberg_schur,
    solve_kronecker_baseline,
)

ALL_SOLVERS: tuple[type[SylvesterSolver], ...] = (
    BartelsStewartSolver,
    HessenbergSchurSolver,
    KroneckerGaussSolver,
    CentroSplitSolver,
)
SOLVERS: dict[str, type[SylvesterSolver]] = {cls().name: cls for cls in ALL_SOLVERS}

# "auto" picks centro-split when both operands pass the symmetry test.
METHOD_TAGS = ("auto", *SOLVERS)


def solve_sylvester(problem: SylvesterProblem, method: str = "auto") -> SylvesterSolution:
    """Solve *problem* with the named method.

    Raises:
        ParameterError: Unknown method tag.
    """
    if method == "auto":
        return solve_with_fallback(problem)
    if method not in SOLVERS:
        raise ParameterError(
            f"Unknown method: {method!r}. Available: {', '.join(METHOD_TAGS)}",
            contract="sylvester_solver",
        )
    return SOLVERS[method]().solve(problem)


__all__ = [
    "ALL_SOLVERS",
    "METHODS",
    "METHOD_TAGS",
    "SOLVERS",
    "BartelsStewartFactorization",
    "BartelsStewartSolver",
    "CentroSplit",
    "CentroSplitSolver",
    "HessenbergSchurSolver",
    "KroneckerGaussSolver",
    "SolveReport",
    "SylvesterProblem",
    "SylvesterSolution",
    "SylvesterSolver",
    "SymmetryClass",
    "SymmetryTag",
    "assemble_kronecker_system",
    "classify_symmetry",
    "exchange_transform",
    "flop_model",
    "solve_bartels_stewart",
    "solve_hessenberg_schur",
    "solve_kronecker_baseline",
    "solve_sylvester",
    "solve_sylvester_centro",
    "solve_with_fallback",
    "split_centrosymmetric",
]
