"""Centrosymmetric structure and the half-size split solve.

A matrix is centrosymmetric when ``J M J = M`` and skew-centrosymmetric
when ``J M J = -M``, with ``J`` the exchange (anti-identity) matrix. DQ
weights on a symmetric point set give ``J A J = -A`` and ``J B J = B``.

For centrosymmetric M the orthogonal matrix ``K`` with columns
``(e_i + e_{n-1-i})/sqrt(2)``, the middle unit vector (odd n) and
``(e_i - e_{n-1-i})/sqrt(2)`` block-diagonalises M into a symmetric block
of size ceil(n/2) and a skew block of size floor(n/2). Applying K to both
sides of ``G X + X R = Q`` gives four independent quarter-size problems.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, replace
from enum import Enum

import numpy as np

from ..config import get_settings
from ..core.linalg import DenseMatrix, FlopCounter, SchurForm, as_dense, frobenius_norm, real_schur
from ..core.parallel import run_parallel
from ..errors import NoUniqueSolutionError, ShapeError, SymmetryError
from .base import SylvesterProblem, SylvesterSolution, SylvesterSolver
from .solvers import BartelsStewartFactorization, BartelsStewartSolver

logger = logging.getLogger(__name__)

_SQRT2 = math.sqrt(2.0)


class SymmetryTag(str, Enum):
    CENTROSYMMETRIC = "centrosymmetric"
    SKEW_CENTROSYMMETRIC = "skew-centrosymmetric"
    NONE = "none"


@dataclass(frozen=True)
class SymmetryClass:
    tag: SymmetryTag
    exchange_dim: int

    @property
    def centrosymmetric(self) -> bool:
        return self.tag is SymmetryTag.CENTROSYMMETRIC


def classify_symmetry(m: DenseMatrix, tol: float | None = None) -> SymmetryClass:
    """Compare ``J M J`` against ``M`` and ``-M`` within ``tol * ||M||_F``.

    The zero matrix is reported as centrosymmetric.
    """
    m = as_dense(m, "M")
    if m.shape[0] != m.shape[1]:
        raise ShapeError(f"Symmetry classification needs a square matrix, got {m.shape}")
    if tol is None:
        tol = get_settings().symmetry_tol
    limit = tol * frobenius_norm(m)
    flipped = m[::-1, ::-1]
    if frobenius_norm(flipped - m) <= limit:
        tag = SymmetryTag.CENTROSYMMETRIC
    elif frobenius_norm(flipped + m) <= limit:
        tag = SymmetryTag.SKEW_CENTROSYMMETRIC
    else:
        tag = SymmetryTag.NONE
    return SymmetryClass(tag=tag, exchange_dim=m.shape[0])


def exchange_transform(n: int) -> DenseMatrix:
    """Orthogonal K: symmetric columns first, then skew columns."""
    if n < 1:
        raise ShapeError(f"Exchange transform needs n >= 1, got {n}")
    half = n // 2
    sym = math.ceil(n / 2)
    k = np.zeros((n, n))
    for i in range(half):
        k[i, i] = k[n - 1 - i, i] = 1.0 / _SQRT2
        k[i, sym + i] = 1.0 / _SQRT2
        k[n - 1 - i, sym + i] = -1.0 / _SQRT2
    if n % 2 == 1:
        k[half, half] = 1.0
    return k


def fold_rows(q: DenseMatrix, counter: FlopCounter | None = None) -> tuple[DenseMatrix, DenseMatrix]:
    """``K^T q`` split into its symmetric (top) and skew (bottom) parts."""
    n = q.shape[0]
    half = n // 2
    head, tail = q[:half], q[n - half:][::-1]
    sym = (head + tail) / _SQRT2
    skew = (head - tail) / _SQRT2
    if n % 2 == 1:
        sym = np.vstack([sym, q[half:half + 1]])
    if counter is not None:
        counter.add(2 * half * q.shape[1])
    return sym, skew


def unfold_rows(sym: DenseMatrix, skew: DenseMatrix, counter: FlopCounter | None = None) -> DenseMatrix:
    """``K [sym; skew]``, the inverse of ``fold_rows``."""
    half = skew.shape[0]
    n = sym.shape[0] + half
    cols = sym.shape[1]
    out = np.empty((n, cols))
    top, bottom = sym[:half], skew
    out[:half] = (top + bottom) / _SQRT2
    out[n - half:] = ((top - bottom) / _SQRT2)[::-1]
    if n % 2 == 1:
        out[half] = sym[half]
    if counter is not None:
        counter.add(2 * half * cols)
    return out


def fold_centrosymmetric(m: DenseMatrix, counter: FlopCounter | None = None) -> tuple[DenseMatrix, DenseMatrix]:
    """Diagonal blocks of ``K^T M K`` for centrosymmetric M.

    With ``M = [[P, C], [...]]`` (P, C of size n//2) the blocks are
    ``P + C J`` and ``P - C J``; for odd n the middle row and column
    border the symmetric block, scaled by sqrt(2).
    """
    n = m.shape[0]
    half = n // 2
    p = m[:half, :half]
    cj = m[:half, n - half:][:, ::-1]
    sym = p + cj
    skew = p - cj
    if n % 2 == 1:
        bordered = np.empty((half + 1, half + 1))
        bordered[:half, :half] = sym
        bordered[:half, half] = _SQRT2 * m[:half, half]
        bordered[half, :half] = _SQRT2 * m[half, :half]
        bordered[half, half] = m[half, half]
        sym = bordered
        if counter is not None:
            counter.add(2 * half)
    return sym, skew


@dataclass(frozen=True, eq=False)
class CentroSplit:
    """``K^T M K = blockdiag(blocks[0], blocks[1])``; ``blocks[1]`` is empty for n = 1."""

    transform: DenseMatrix
    blocks: tuple[DenseMatrix, DenseMatrix]

    def block_diagonal(self) -> DenseMatrix:
        sym, skew = self.blocks
        n = sym.shape[0] + skew.shape[0]
        out = np.zeros((n, n))
        out[: sym.shape[0], : sym.shape[0]] = sym
        out[sym.shape[0]:, sym.shape[0]:] = skew
        return out


def _require_centro(m: DenseMatrix, name: str) -> None:
    cls = classify_symmetry(m)
    if not cls.centrosymmetric:
        raise SymmetryError(f"{name} is {cls.tag.value}, not centrosymmetric")


def split_centrosymmetric(m: DenseMatrix) -> CentroSplit:
    """Block-diagonalise a centrosymmetric matrix.

    Raises:
        SymmetryError: ``m`` is not centrosymmetric.
    """
    m = as_dense(m, "M")
    _require_centro(m, "Matrix")
    return CentroSplit(transform=exchange_transform(m.shape[0]), blocks=fold_centrosymmetric(m))


def _half_schur(blocks: tuple[DenseMatrix, ...], counter: FlopCounter) -> list[SchurForm | None]:
    return [real_schur(b, counter=counter) if b.shape[0] else None for b in blocks]


class CentroSplitSolver(SylvesterSolver):
    """Four independent quarter-size Bartels-Stewart solves.

    Args:
        parallel: Dispatch the sub-problems through ``run_parallel``.
    """

    def __init__(self, parallel: bool = False):
        self.parallel = parallel

    @property
    def name(self) -> str:
        return "centro-split"

    def _solve(self, problem: SylvesterProblem, counter: FlopCounter) -> DenseMatrix:
        _require_centro(problem.g, "G")
        _require_centro(problem.r, "R")

        g_blocks = fold_centrosymmetric(problem.g, counter)
        r_blocks = fold_centrosymmetric(problem.r, counter)
        g_schur = _half_schur(g_blocks, counter)
        r_schur = _half_schur(r_blocks, counter)

        # Q' = K_G^T Q K_R, split into quarters.
        q_sym, q_skew = fold_rows(problem.q, counter)
        quarters = {}
        for a, rows in enumerate((q_sym, q_skew)):
            left, right = fold_rows(rows.T, counter)
            quarters[(a, 0)] = left.T
            quarters[(a, 1)] = right.T

        tasks = {}
        for a in range(2):
            for b in range(2):
                if g_schur[a] is None or r_schur[b] is None:
                    continue
                tasks[f"{a}{b}"] = self._task(a, b, g_blocks, r_blocks, g_schur, r_schur, quarters)

        if self.parallel:
            errors: dict[str, Exception] = {}
            results = run_parallel(tasks, errors=errors)
            if errors:
                raise next(iter(errors.values()))
        else:
            results = {key: fn() for key, fn in tasks.items()}

        sub = {}
        for key, (y, mults) in results.items():
            counter.add(mults)
            sub[(int(key[0]), int(key[1]))] = y

        def _quarter(a: int, b: int) -> DenseMatrix:
            return sub.get((a, b), np.zeros(quarters[(a, b)].shape))

        # X = K_G Y K_R^T
        rows = [unfold_rows(_quarter(a, 0).T, _quarter(a, 1).T, counter).T for a in range(2)]
        return unfold_rows(rows[0], rows[1], counter)

    @staticmethod
    def _task(a, b, g_blocks, r_blocks, g_schur, r_schur, quarters):
        def run() -> tuple[DenseMatrix, int]:
            local = FlopCounter()
            scale = frobenius_norm(g_blocks[a]) + frobenius_norm(r_blocks[b])
            try:
                fact = BartelsStewartFactorization(g_schur[a], r_schur[b], scale)
                y = fact.solve(quarters[(a, b)], local)
            except NoUniqueSolutionError as e:
                raise NoUniqueSolutionError(
                    f"Sub-problem (G block {a}, R block {b}): {e}", eigenvalues=e.eigenvalues
                ) from e
            return y, local.multiplications

        return run


def solve_sylvester_centro(problem: SylvesterProblem, parallel: bool = False) -> SylvesterSolution:
    """Split-solve ``G X + X R = Q`` for centrosymmetric G and R.

    Raises:
        SymmetryError: G or R is not centrosymmetric.
        NoUniqueSolutionError: A sub-problem is singular; the message names
            the block indices.
    """
    return CentroSplitSolver(parallel=parallel).solve(problem)


def solve_with_fallback(problem: SylvesterProblem, parallel: bool = False) -> SylvesterSolution:
    """Centro split when both operands pass the symmetry test, else Bartels-Stewart.

    The fallback is recorded as a report note.
    """
    g_cls = classify_symmetry(problem.g)
    r_cls = classify_symmetry(problem.r)
    if g_cls.centrosymmetric and r_cls.centrosymmetric:
        return solve_sylvester_centro(problem, parallel=parallel)

    note = f"centro-split not applicable (G: {g_cls.tag.value}, R: {r_cls.tag.value}); used bartels-stewart"
    logger.warning(note)
    solution = BartelsStewartSolver().solve(problem)
    return replace(solution, report=replace(solution.report, notes=solution.report.notes + (note,)))


