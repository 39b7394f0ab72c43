"""SylvesterSolver abstract base class and problem/report types."""

from __future__ import annotations

import logging
import time
from abc import ABC, abstractmethod
from dataclasses import asdict, dataclass, field

import numpy as np

from ..core.linalg import DenseMatrix, FlopCounter, as_dense, frobenius_norm
from ..errors import ShapeError
from .flops import flop_model

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class SylvesterProblem:
    """The matrix equation ``G X + X R = Q`` (G: n x n, R: m x m, Q: n x m)."""

    g: DenseMatrix
    r: DenseMatrix
    q: DenseMatrix

    def __post_init__(self):
        g = as_dense(self.g, "G")
        r = as_dense(self.r, "R")
        q = as_dense(self.q, "Q")
        if g.shape[0] != g.shape[1] or r.shape[0] != r.shape[1]:
            raise ShapeError(f"G and R must be square, got {g.shape} and {r.shape}")
        if q.shape != (g.shape[0], r.shape[0]):
            raise ShapeError(f"Q has shape {q.shape}, expected {(g.shape[0], r.shape[0])}")
        object.__setattr__(self, "g", g)
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "q", q)

    @property
    def n(self) -> int:
        return self.g.shape[0]

    @property
    def m(self) -> int:
        return self.r.shape[0]

    def residual(self, x: DenseMatrix) -> DenseMatrix:
        return self.g @ x + x @ self.r - self.q

    def relative_residual(self, x: DenseMatrix) -> float:
        """``||G X + X R - Q||_F / max(||Q||_F, tiny)``."""
        denom = max(frobenius_norm(self.q), np.finfo(np.float64).tiny)
        return frobenius_norm(self.residual(x)) / denom


@dataclass(frozen=True)
class SolveReport:
    """Cost and accuracy of one solve."""

    method: str
    counted_multiplications: int
    model_multiplications: float
    wall_time: float
    relative_residual: float
    notes: tuple[str, ...] = ()
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["notes"] = list(self.notes)
        extra = d.pop("extra")
        d.update(extra)
        return d


@dataclass(frozen=True, eq=False)
class SylvesterSolution:
    """Solution ``x`` with its report."""

    x: DenseMatrix
    report: SolveReport


class SylvesterSolver(ABC):
    """Abstract base class for ``G X + X R = Q`` solvers.

    Subclasses implement ``name`` and ``_solve``. The public ``solve``
    method wraps ``_solve`` with a private multiplication counter, timing
    and the residual check.
    """

    @property
    @abstractmethod
    def name(self) -> str:
        """Method tag, e.g. ``"bartels-stewart"``."""

    @abstractmethod
    def _solve(self, problem: SylvesterProblem, counter: FlopCounter) -> DenseMatrix:
        """Return X; count every scalar multiplication on *counter*."""

    # ------------------------------------------------------------------
    # Public API
    # ------------------------------------------------------------------

    def model(self, n: int, m: int) -> float:
        return flop_model(self.name, n, m)

    def solve(self, problem: SylvesterProblem) -> SylvesterSolution:
        """Solve *problem* and report residual, counts and wall time."""
        counter = FlopCounter()
        start = time.perf_counter()
        x = self._solve(problem, counter)
        wall = time.perf_counter() - start

        report = SolveReport(
            method=self.name,
            counted_multiplications=counter.multiplications,
            model_multiplications=self.model(problem.n, problem.m),
            wall_time=wall,
            relative_residual=problem.relative_residual(x),
        )
        logger.debug(
            f"[{self.name}] n={problem.n} m={problem.m} "
            f"mults={report.counted_multiplications} residual={report.relative_residual:.2e}"
        )
        return SylvesterSolution(x=x, report=report)
