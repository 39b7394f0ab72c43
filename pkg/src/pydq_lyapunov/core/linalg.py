"""
Dense real linear algebra with multiplication counting.

Matrices are 2-D C-contiguous ``float64`` numpy arrays (``DenseMatrix``).
Every routine that does arithmetic accepts an optional ``FlopCounter`` and
adds the scalar multiplications it performs; divisions and square roots
count as one multiplication each. Nothing here uses complex arithmetic:
complex-conjugate eigenvalue pairs stay in 2x2 real blocks.

vec convention: COLUMN stacking, so that vec(A X B^T) = (B kron A) vec(X).
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from ..config import get_settings
from ..errors import ConvergenceError, NonFiniteError, ShapeError, SingularMatrixError

logger = logging.getLogger(__name__)

DenseMatrix = npt.NDArray[np.float64]


@dataclass
class FlopCounter:
    """Accumulator of scalar multiplications.

    Each solve owns a private counter; the value never decreases.
    """

    multiplications: int = 0

    def add(self, count: int) -> None:
        if count < 0:
            raise ValueError(f"Negative multiplication count: {count}")
        self.multiplications += int(count)


def _tally(counter: FlopCounter | None, count: int) -> None:
    if counter is not None:
        counter.add(count)


def as_dense(data, name: str = "matrix") -> DenseMatrix:
    """Validate and copy *data* into a ``DenseMatrix``.

    1-D input becomes a column vector.

    Raises:
        ShapeError: Not 1-D/2-D, or an empty dimension.
        NonFiniteError: Any NaN or Inf entry.
    """
    arr = np.array(data, dtype=np.float64)
    if arr.ndim == 1:
        arr = arr.reshape(-1, 1)
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ShapeError(f"{name} must be a non-empty 2-D matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise NonFiniteError(f"{name} contains NaN or Inf entries")
    return np.ascontiguousarray(arr)


def _require_square(a: DenseMatrix, name: str) -> int:
    if a.shape[0] != a.shape[1]:
        raise ShapeError(f"{name} must be square, got shape {a.shape}")
    return a.shape[0]


def frobenius_norm(a: DenseMatrix) -> float:
    return float(np.linalg.norm(a)) if a.size else 0.0


def inf_norm(a: DenseMatrix) -> float:
    """Maximum absolute row sum."""
    return float(np.abs(a).sum(axis=1).max()) if a.size else 0.0


# ----------------------------------------------------------------------
# Products, Kronecker, vec
# ----------------------------------------------------------------------


def matmul(a: DenseMatrix, b: DenseMatrix, counter: FlopCounter | None = None) -> DenseMatrix:
    """Matrix product, counting ``a.rows * a.cols * b.cols`` multiplications.

    Raises:
        ShapeError: ``a.cols != b.rows``.
    """
    if a.ndim != 2 or b.ndim != 2 or a.shape[1] != b.shape[0]:
        raise ShapeError(f"Cannot multiply {a.shape} by {b.shape}")
    _tally(counter, a.shape[0] * a.shape[1] * b.shape[1])
    return a @ b


def kron(a: DenseMatrix, b: DenseMatrix) -> DenseMatrix:
    """Kronecker product: block matrix ``[a_ij * b]``."""
    return np.kron(a, b)


def vec_stack(m: DenseMatrix) -> DenseMatrix:
    """Stack the columns of *m* into a ``(rows*cols) x 1`` column vector."""
    return m.reshape(-1, 1, order="F").copy()


def unstack(v: DenseMatrix, rows: int, cols: int) -> DenseMatrix:
    """Inverse of ``vec_stack``.

    Raises:
        ShapeError: ``v`` does not hold exactly ``rows * cols`` entries.
    """
    v = np.asarray(v, dtype=np.float64)
    if rows < 1 or cols < 1 or v.size != rows * cols:
        raise ShapeError(f"Cannot unstack {v.size} entries into {rows}x{cols}")
    return v.reshape((rows, cols), order="F").copy()


# ----------------------------------------------------------------------
# Gaussian elimination
# ----------------------------------------------------------------------


def lu_solve(
    a: DenseMatrix,
    rhs: DenseMatrix,
    counter: FlopCounter | None = None,
    pivot_tol: float | None = None,
) -> DenseMatrix:
    """Solve ``a X = rhs`` by Gaussian elimination with partial pivoting.

    Args:
        a: Square coefficient matrix.
        rhs: Right-hand side(s), ``a.rows`` rows.
        counter: Optional multiplication counter.
        pivot_tol: Relative pivot tolerance (default: ``settings.pivot_tol``).

    Raises:
        ShapeError: Non-square ``a`` or mismatched ``rhs``.
        SingularMatrixError: A pivot is at most ``pivot_tol * ||a||_inf``.
    """
    return lu_solve_banded(a, rhs, lower=None, counter=counter, pivot_tol=pivot_tol)


def lu_solve_banded(
    a: DenseMatrix,
    rhs: DenseMatrix,
    lower: int | None,
    counter: FlopCounter | None = None,
    pivot_tol: float | None = None,
) -> DenseMatrix:
    """Gaussian elimination exploiting a lower bandwidth.

    With ``lower=p`` only rows ``k+1..k+p`` are eliminated at step ``k``
    (``p=1`` is an upper Hessenberg system). ``lower=None`` means dense.
    """
    lu = np.array(a, dtype=np.float64)
    x = np.array(rhs, dtype=np.float64)
    if x.ndim == 1:
        x = x.reshape(-1, 1)
    n = _require_square(lu, "coefficient matrix")
    if x.shape[0] != n:
        raise ShapeError(f"Right-hand side has {x.shape[0]} rows, expected {n}")
    if pivot_tol is None:
        pivot_tol = get_settings().pivot_tol
    threshold = pivot_tol * inf_norm(lu)
    n_rhs = x.shape[1]
    band = n if lower is None else max(int(lower), 0)

    for k in range(n):
        stop = min(n, k + band + 1)
        piv = k + int(np.argmax(np.abs(lu[k:stop, k])))
        if abs(lu[piv, k]) <= threshold:
            raise SingularMatrixError(
                f"Matrix is singular to working precision: pivot {lu[piv, k]:.3e} "
                f"in column {k} (threshold {threshold:.3e})"
            )
        if piv != k:
            lu[[k, piv]] = lu[[piv, k]]
            x[[k, piv]] = x[[piv, k]]
        rows = stop - k - 1
        if rows > 0:
            mult = lu[k + 1:stop, k] / lu[k, k]
            lu[k + 1:stop, k + 1:] -= np.outer(mult, lu[k, k + 1:])
            x[k + 1:stop] -= np.outer(mult, x[k])
            _tally(counter, rows + rows * (n - k - 1) + rows * n_rhs)

    for k in range(n - 1, -1, -1):
        x[k] = (x[k] - lu[k, k + 1:] @ x[k + 1:]) / lu[k, k]
        _tally(counter, (n - k - 1) * n_rhs + n_rhs)
    return x


# ----------------------------------------------------------------------
# Householder reflections
# ----------------------------------------------------------------------


def _householder(x: np.ndarray, counter: FlopCounter | None) -> tuple[np.ndarray, float]:
    """Return ``(v, beta)`` with ``(I - beta v v^T) x = -sign(x_0) ||x|| e_1``."""
    k = x.shape[0]
    alpha = math.sqrt(float(x @ x))
    _tally(counter, 2 * k + 2)
    if alpha == 0.0:
        return np.zeros(k), 0.0
    v = x.astype(np.float64, copy=True)
    v[0] += math.copysign(alpha, v[0])
    return v, 2.0 / float(v @ v)


def _reflect_left(mat, rows: slice, cols: slice, v, beta, counter) -> None:
    block = mat[rows, cols]
    w = beta * (v @ block)
    block -= np.outer(v, w)
    _tally(counter, (2 * v.shape[0] + 1) * block.shape[1])


def _reflect_right(mat, rows: slice, cols: slice, v, beta, counter) -> None:
    block = mat[rows, cols]
    w = beta * (block @ v)
    block -= np.outer(w, v)
    _tally(counter, (2 * v.shape[0] + 1) * block.shape[0])


def hessenberg(a: DenseMatrix, counter: FlopCounter | None = None) -> tuple[DenseMatrix, DenseMatrix]:
    """Householder reduction to upper Hessenberg form.

    Returns:
        ``(h, q)`` with ``q`` orthogonal and ``q^T a q = h``.
    """
    h = as_dense(a, "hessenberg input")
    n = _require_square(h, "hessenberg input")
    q = np.eye(n)
    for k in range(n - 2):
        x = h[k + 1:, k].copy()
        if not np.any(x[1:]):
            continue
        v, beta = _householder(x, counter)
        _reflect_left(h, slice(k + 1, n), slice(k, n), v, beta, counter)
        _reflect_right(h, slice(0, n), slice(k + 1, n), v, beta, counter)
        _reflect_right(q, slice(0, n), slice(k + 1, n), v, beta, counter)
        h[k + 2:, k] = 0.0
    return h, q


# ----------------------------------------------------------------------
# Real Schur decomposition
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class SchurForm:
    """Real Schur decomposition ``source = u t u^T``.

    ``t`` is quasi-upper-triangular: 1x1 blocks and 2x2 blocks with
    complex-conjugate eigenvalues only.
    """

    u: DenseMatrix
    t: DenseMatrix
    source_dim: int

    @property
    def blocks(self) -> list[tuple[int, int]]:
        return block_structure(self.t)

    def eigenvalues(self) -> tuple[np.ndarray, np.ndarray]:
        return block_eigenvalues(self.t)


def block_structure(t: DenseMatrix) -> list[tuple[int, int]]:
    """Diagonal block layout ``[(start, size), ...]`` of a quasi-triangular matrix."""
    n = t.shape[0]
    blocks = []
    i = 0
    while i < n:
        if i + 1 < n and t[i + 1, i] != 0.0:
            blocks.append((i, 2))
            i += 2
        else:
            blocks.append((i, 1))
            i += 1
    return blocks


def block_eigenvalues(t: DenseMatrix) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues per diagonal block as ``(real_parts, imag_parts)``.

    A 2x2 block contributes one entry standing for the pair ``re +- i*im``
    (``im > 0``); a 1x1 block contributes ``(t_ii, 0)``.
    """
    re, im = [], []
    for start, size in block_structure(t):
        if size == 1:
            re.append(t[start, start])
            im.append(0.0)
        else:
            a, b = t[start, start], t[start, start + 1]
            c, d = t[start + 1, start], t[start + 1, start + 1]
            p = 0.5 * (a - d)
            disc = p * p + b * c
            re.append(0.5 * (a + d))
            im.append(math.sqrt(max(-disc, 0.0)))
    return np.array(re), np.array(im)


def _find_split(h: DenseMatrix, hi: int, tol: float, fallback_scale: float) -> int:
    """Lowest index of the unreduced block ending at *hi*; zeroes the split entry."""
    lo = hi
    while lo > 0:
        scale = abs(h[lo - 1, lo - 1]) + abs(h[lo, lo])
        if scale == 0.0:
            scale = fallback_scale
        if abs(h[lo, lo - 1]) <= tol * scale:
            h[lo, lo - 1] = 0.0
            return lo
        lo -= 1
    return 0


def _standardize_block(h: DenseMatrix, u: DenseMatrix, lo: int, counter: FlopCounter | None) -> None:
    """Split a 2x2 diagonal block with real eigenvalues by a rotation."""
    n = h.shape[0]
    a, b = h[lo, lo], h[lo, lo + 1]
    c, d = h[lo + 1, lo], h[lo + 1, lo + 1]
    if c == 0.0:
        return
    p = 0.5 * (a - d)
    disc = p * p + b * c
    _tally(counter, 4)
    if disc < 0.0:
        return
    # First rotation column is the eigenvector (z, c) of lambda = d + z.
    z = p + math.copysign(math.sqrt(disc), p)
    tau = math.hypot(z, c)
    rot = np.array([[z / tau, -c / tau], [c / tau, z / tau]])
    h[lo:lo + 2, lo:] = rot.T @ h[lo:lo + 2, lo:]
    h[:lo + 2, lo:lo + 2] = h[:lo + 2, lo:lo + 2] @ rot
    u[:, lo:lo + 2] = u[:, lo:lo + 2] @ rot
    h[lo + 1, lo] = 0.0
    _tally(counter, 4 + 4 * (n - lo) + 4 * (lo + 2) + 4 * n)


def _francis_sweep(h, u, lo: int, hi: int, shift_sum: float, shift_prod: float, counter) -> None:
    """One implicit double-shift QR sweep on the active block ``h[lo:hi+1, lo:hi+1]``."""
    n = h.shape[0]
    x = h[lo, lo] * h[lo, lo] + h[lo, lo + 1] * h[lo + 1, lo] - shift_sum * h[lo, lo] + shift_prod
    y = h[lo + 1, lo] * (h[lo, lo] + h[lo + 1, lo + 1] - shift_sum)
    z = h[lo + 1, lo] * h[lo + 2, lo + 1]
    _tally(counter, 7)

    for k in range(lo, hi - 1):
        v, beta = _householder(np.array([x, y, z]), counter)
        if beta != 0.0:
            _reflect_left(h, slice(k, k + 3), slice(max(lo, k - 1), n), v, beta, counter)
            _reflect_right(h, slice(0, min(k + 4, hi + 1)), slice(k, k + 3), v, beta, counter)
            _reflect_right(u, slice(0, n), slice(k, k + 3), v, beta, counter)
            if k > lo:
                h[k + 1, k - 1] = 0.0
                h[k + 2, k - 1] = 0.0
        x = h[k + 1, k]
        y = h[k + 2, k]
        if k < hi - 2:
            z = h[k + 3, k]

    v, beta = _householder(np.array([x, y]), counter)
    if beta != 0.0:
        k = hi - 1
        _reflect_left(h, slice(k, k + 2), slice(k - 1, n), v, beta, counter)
        _reflect_right(h, slice(0, hi + 1), slice(k, k + 2), v, beta, counter)
        _reflect_right(u, slice(0, n), slice(k, k + 2), v, beta, counter)
        h[hi, hi - 2] = 0.0


def real_schur(
    a: DenseMatrix,
    max_iter: int | None = None,
    tol: float | None = None,
    counter: FlopCounter | None = None,
) -> SchurForm:
    """Real Schur decomposition by Hessenberg reduction and Francis double-shift QR.

    Args:
        a: Square matrix.
        max_iter: Maximum QR sweeps (default ``schur_max_iter_factor * dim``).
        tol: Deflation tolerance: ``|h[i+1,i]| <= tol * (|h[i,i]| + |h[i+1,i+1]|)``
            (default ``settings.schur_deflation_tol``).
        counter: Optional multiplication counter.

    Raises:
        ConvergenceError: ``max_iter`` sweeps without deflating; ``index`` is
            the row of the stuck subdiagonal entry.
    """
    settings = get_settings()
    a = as_dense(a, "real_schur input")
    n = _require_square(a, "real_schur input")
    if max_iter is None:
        max_iter = settings.schur_max_iter_factor * n
    if tol is None:
        tol = settings.schur_deflation_tol

    h, u = hessenberg(a, counter)
    fallback_scale = frobenius_norm(h) or 1.0

    hi = n - 1
    sweeps = 0
    stalled = 0
    while hi >= 0:
        lo = _find_split(h, hi, tol, fallback_scale)
        if lo == hi:
            hi -= 1
            stalled = 0
            continue
        if lo == hi - 1:
            _standardize_block(h, u, lo, counter)
            hi -= 2
            stalled = 0
            continue
        if sweeps >= max_iter:
            raise ConvergenceError(
                f"Francis QR did not converge in {max_iter} sweeps; "
                f"subdiagonal entry h[{hi},{hi - 1}] = {h[hi, hi - 1]:.3e} is stuck",
                index=hi,
            )
        sweeps += 1
        stalled += 1
        if stalled % 10 == 0:
            # Exceptional shift breaks cycles of the standard Wilkinson pair.
            s = abs(h[hi, hi - 1]) + abs(h[hi - 1, hi - 2])
            diag = 0.75 * s + h[hi, hi]
            shift_sum = 2.0 * diag
            shift_prod = diag * diag + 0.4375 * s * s
        else:
            shift_sum = h[hi - 1, hi - 1] + h[hi, hi]
            shift_prod = h[hi - 1, hi - 1] * h[hi, hi] - h[hi - 1, hi] * h[hi, hi - 1]
        _francis_sweep(h, u, lo, hi, shift_sum, shift_prod, counter)

    logger.debug(f"real_schur: dim={n} sweeps={sweeps}")
    return SchurForm(u=u, t=h, source_dim=n)
