"""Bartels-Stewart, Hessenberg-Schur and Kronecker-Gauss solvers for ``G X + X R = Q``.

All three follow the same outline:

1. reduce G and R to simple form (real Schur, or Hessenberg for G in HS),
2. transform the right-hand side, ``F = U^T Q V``,
3. solve the reduced equation by block substitution,
4. transform back, ``X = U Y V^T``.

The Kronecker baseline skips all of that and runs Gaussian elimination on
the ``nm x nm`` system ``(I_m kron G + R^T kron I_n) vec X = vec Q``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from ..config import get_settings
from ..core.linalg import (
    DenseMatrix,
    FlopCounter,
    SchurForm,
    block_eigenvalues,
    block_structure,
    frobenius_norm,
    hessenberg,
    kron,
    lu_solve,
    lu_solve_banded,
    matmul,
    real_schur,
    unstack,
    vec_stack,
)
from ..errors import NoUniqueSolutionError, ProblemTooLargeError, SingularMatrixError
from .base import SylvesterProblem, SylvesterSolution, SylvesterSolver

logger = logging.getLogger(__name__)


def _pair(re: float, im: float) -> complex:
    return complex(float(re), float(im))


# ----------------------------------------------------------------------
# Bartels-Stewart
# ----------------------------------------------------------------------


def _solve_block(gb: DenseMatrix, rb: DenseMatrix, rhs: DenseMatrix, counter: FlopCounter | None) -> DenseMatrix:
    """Solve the p x q block equation ``gb Y + Y rb = rhs`` (p, q <= 2)."""
    p, q = rhs.shape
    if p == 1 and q == 1:
        denom = gb[0, 0] + rb[0, 0]
        if denom == 0.0:
            raise NoUniqueSolutionError(
                f"Eigenvalue {gb[0, 0]:.6g} of G equals eigenvalue {-rb[0, 0]:.6g} of -R",
                eigenvalues=(_pair(gb[0, 0], 0.0), _pair(rb[0, 0], 0.0)),
            )
        if counter is not None:
            counter.add(1)
        return rhs / denom
    local = kron(np.eye(q), gb) + kron(rb.T, np.eye(p))
    try:
        sol = lu_solve(local, vec_stack(rhs), counter)
    except SingularMatrixError as e:
        re_g, im_g = block_eigenvalues(gb)
        re_r, im_r = block_eigenvalues(rb)
        raise NoUniqueSolutionError(
            f"Singular {p}x{q} block system: eigenvalues of G and -R collide ({e})",
            eigenvalues=(_pair(re_g[0], im_g[0]), _pair(re_r[0], im_r[0])),
        ) from e
    return unstack(sol, p, q)


def solve_quasi_triangular(
    tg: DenseMatrix,
    tr: DenseMatrix,
    f: DenseMatrix,
    counter: FlopCounter | None = None,
) -> DenseMatrix:
    """Solve ``tg Y + Y tr = f`` for upper quasi-triangular ``tg`` and ``tr``.

    Column blocks of Y are resolved left to right, row blocks bottom-up.
    """
    n, _ = f.shape
    y = np.zeros_like(f)
    row_blocks = block_structure(tg)
    for c0, q in block_structure(tr):
        c1 = c0 + q
        for r0, p in reversed(row_blocks):
            r1 = r0 + p
            rhs = f[r0:r1, c0:c1].copy()
            if r1 < n:
                rhs -= matmul(tg[r0:r1, r1:], y[r1:, c0:c1], counter)
            if c0 > 0:
                rhs -= matmul(y[r0:r1, :c0], tr[:c0, c0:c1], counter)
            y[r0:r1, c0:c1] = _solve_block(tg[r0:r1, r0:r1], tr[c0:c1, c0:c1], rhs, counter)
    return y


@dataclass(frozen=True, eq=False)
class BartelsStewartFactorization:
    """Schur forms of G and R, reusable for any number of right-hand sides.

    ``G = U T_G U^T`` and ``R = V T_R V^T``. Construction checks that no
    eigenvalue of G coincides with an eigenvalue of -R.
    """

    g_schur: SchurForm
    r_schur: SchurForm
    scale: float

    def __post_init__(self):
        self.check_collisions()

    @classmethod
    def factorize(
        cls,
        g: DenseMatrix,
        r: DenseMatrix,
        counter: FlopCounter | None = None,
    ) -> BartelsStewartFactorization:
        """Compute both real Schur forms.

        Raises:
            ConvergenceError: Francis QR failed on G or R.
            NoUniqueSolutionError: G and -R share an eigenvalue.
        """
        g_schur = real_schur(g, counter=counter)
        r_schur = real_schur(r, counter=counter)
        return cls(g_schur, r_schur, frobenius_norm(g) + frobenius_norm(r))

    @property
    def n(self) -> int:
        return self.g_schur.source_dim

    @property
    def m(self) -> int:
        return self.r_schur.source_dim

    def check_collisions(self, tol: float | None = None) -> None:
        """Raise if ``|lambda_G + mu_R| <= tol * (||G||_F + ||R||_F)`` for some pair.

        Conjugate pairs are compared as ``lambda_G`` against ``conj(mu_R)``;
        both are stored with non-negative imaginary part.
        """
        if tol is None:
            tol = get_settings().collision_tol
        re_g, im_g = self.g_schur.eigenvalues()
        re_r, im_r = self.r_schur.eigenvalues()
        gap = np.hypot(re_g[:, None] + re_r[None, :], im_g[:, None] - im_r[None, :])
        hits = np.argwhere(gap <= tol * self.scale)
        if hits.size:
            i, j = hits[0]
            lam = _pair(re_g[i], im_g[i])
            mu = _pair(re_r[j], im_r[j])
            raise NoUniqueSolutionError(
                f"No unique solution: eigenvalue {lam:.6g} of G collides with eigenvalue {-mu:.6g} of -R",
                eigenvalues=(lam, mu),
            )

    def solve(self, q: DenseMatrix, counter: FlopCounter | None = None) -> DenseMatrix:
        """Transform, substitute and transform back for one right-hand side."""
        u, v = self.g_schur.u, self.r_schur.u
        f = matmul(matmul(u.T, q, counter), v, counter)
        y = solve_quasi_triangular(self.g_schur.t, self.r_schur.t, f, counter)
        return matmul(matmul(u, y, counter), v.T, counter)


class BartelsStewartSolver(SylvesterSolver):
    """Real Schur forms of both G and R."""

    @property
    def name(self) -> str:
        return "bartels-stewart"

    def _solve(self, problem: SylvesterProblem, counter: FlopCounter) -> DenseMatrix:
        fact = BartelsStewartFactorization.factorize(problem.g, problem.r, counter)
        return fact.solve(problem.q, counter)


# ----------------------------------------------------------------------
# Hessenberg-Schur
# ----------------------------------------------------------------------


def _interleaved_system(h: DenseMatrix, t: DenseMatrix, c0: int) -> DenseMatrix:
    """2n system for a 2x2 block of T, unknowns ordered ``y1_0, y2_0, y1_1, ...``.

    Lower bandwidth is 2.
    """
    n = h.shape[0]
    eye = np.eye(n)
    big = np.zeros((2 * n, 2 * n))
    big[0::2, 0::2] = h + t[c0, c0] * eye
    big[0::2, 1::2] = t[c0 + 1, c0] * eye
    big[1::2, 0::2] = t[c0, c0 + 1] * eye
    big[1::2, 1::2] = h + t[c0 + 1, c0 + 1] * eye
    return big


class HessenbergSchurSolver(SylvesterSolver):
    """Hessenberg form of G, real Schur form of R; Step 3 is banded elimination."""

    @property
    def name(self) -> str:
        return "hessenberg-schur"

    def _solve(self, problem: SylvesterProblem, counter: FlopCounter) -> DenseMatrix:
        n = problem.n
        h, qg = hessenberg(problem.g, counter)
        r_schur = real_schur(problem.r, counter=counter)
        v, t = r_schur.u, r_schur.t

        f = matmul(matmul(qg.T, problem.q, counter), v, counter)
        y = np.zeros_like(f)
        for c0, size in block_structure(t):
            c1 = c0 + size
            rhs = f[:, c0:c1].copy()
            if c0 > 0:
                rhs -= matmul(y[:, :c0], t[:c0, c0:c1], counter)
            try:
                if size == 1:
                    y[:, c0:c1] = lu_solve_banded(h + t[c0, c0] * np.eye(n), rhs, 1, counter)
                else:
                    stacked = np.empty((2 * n, 1))
                    stacked[0::2, 0] = rhs[:, 0]
                    stacked[1::2, 0] = rhs[:, 1]
                    sol = lu_solve_banded(_interleaved_system(h, t, c0), stacked, 2, counter)
                    y[:, c0] = sol[0::2, 0]
                    y[:, c0 + 1] = sol[1::2, 0]
            except SingularMatrixError as e:
                re, im = block_eigenvalues(t[c0:c1, c0:c1])
                mu = _pair(re[0], im[0])
                raise NoUniqueSolutionError(
                    f"No unique solution: eigenvalue {-mu:.6g} of -R is also an eigenvalue of G",
                    eigenvalues=(-mu, mu),
                ) from e
        return matmul(matmul(qg, y, counter), v.T, counter)


# ----------------------------------------------------------------------
# Kronecker + Gauss baseline
# ----------------------------------------------------------------------


def assemble_kronecker_system(problem: SylvesterProblem) -> tuple[DenseMatrix, DenseMatrix]:
    """``(I_m kron G + R^T kron I_n, vec Q)`` under column stacking."""
    n, m = problem.n, problem.m
    big = kron(np.eye(m), problem.g) + kron(problem.r.T, np.eye(n))
    return big, vec_stack(problem.q)


class KroneckerGaussSolver(SylvesterSolver):
    """Gaussian elimination on the assembled nm x nm system."""

    @property
    def name(self) -> str:
        return "kronecker-gauss"

    def _solve(self, problem: SylvesterProblem, counter: FlopCounter) -> DenseMatrix:
        n, m = problem.n, problem.m
        cap = get_settings().kronecker_unknown_cap
        if n * m > cap:
            raise ProblemTooLargeError(
                f"Kronecker system has {n * m} unknowns, cap is {cap} (kronecker_unknown_cap)"
            )
        big, rhs = assemble_kronecker_system(problem)
        try:
            sol = lu_solve(big, rhs, counter)
        except SingularMatrixError as e:
            raise NoUniqueSolutionError(f"No unique solution: Kronecker system is singular ({e})") from e
        return unstack(sol, n, m)


def solve_bartels_stewart(problem: SylvesterProblem) -> SylvesterSolution:
    """Solve ``G X + X R = Q`` with real Schur forms of G and R."""
    return BartelsStewartSolver().solve(problem)


def solve_hessenberg_schur(problem: SylvesterProblem) -> SylvesterSolution:
    """Solve ``G X + X R = Q`` with G in Hessenberg and R in real Schur form."""
    return HessenbergSchurSolver().solve(problem)


def solve_kronecker_baseline(problem: SylvesterProblem) -> SylvesterSolution:
    """Solve ``G X + X R = Q`` by Gaussian elimination on the Kronecker system.

    Raises:
        ProblemTooLargeError: ``n*m`` exceeds ``settings.kronecker_unknown_cap``.
        NoUniqueSolutionError: The assembled matrix is singular.
    """
    return KroneckerGaussSolver().solve(problem)
