"""Multiplication-count models for the Sylvester solvers.

Two kinds of curve live here:

- analytic counts (``r-thr``, ``kronecker-gauss``, ``r-thr-centro``),
  reproducing the published cost comparison as plain arithmetic;
- calibration curves for the instrumented solvers (``bartels-stewart``,
  ``hessenberg-schur``, ``centro-split``, ``backward-euler``), whose
  coefficients live in ``Settings``.
"""

from __future__ import annotations

import math

from ..config import get_settings
from ..errors import ParameterError

ANALYTIC_METHODS = ("r-thr", "kronecker-gauss", "r-thr-centro", "rk4")
CALIBRATED_METHODS = ("bartels-stewart", "hessenberg-schur", "centro-split", "backward-euler")
METHODS = ANALYTIC_METHODS + CALIBRATED_METHODS


def r_thr_multiplications(n: float, m: float) -> float:
    """``n^3 + 4/3 m^3 + 7 n^2 m + 5 n m^2 + n^2`` (``14 1/3 n^3 + n^2`` when n = m)."""
    return n**3 + 4.0 / 3.0 * m**3 + 7.0 * n * n * m + 5.0 * n * m * m + n * n


def kronecker_multiplications(n: float, m: float) -> float:
    """Gaussian elimination on the ``nm x nm`` Kronecker system: ``(nm)^3 / 3``."""
    return (n * m) ** 3 / 3.0


def _schur(dim: float) -> float:
    return get_settings().schur_cost_coeff * dim**3


def _coupling(n: float, m: float) -> float:
    return get_settings().coupling_cost_coeff * (n * n * m + n * m * m)


def _halves(dim: int) -> tuple[int, ...]:
    """Sizes of the symmetric and skew blocks of a centro split (empty ones dropped)."""
    return tuple(s for s in (math.ceil(dim / 2), dim // 2) if s > 0)


def flop_model(method: str, n: int, m: int, steps: int = 1) -> float:
    """Model multiplication count of *method* on an ``n x m`` problem.

    Args:
        method: One of ``METHODS``.
        n: Rows of X (dimension of G).
        m: Columns of X (dimension of R).
        steps: Time steps (``backward-euler`` and ``rk4``).

    Raises:
        ParameterError: Unknown method, ``n``/``m`` < 1 or ``steps`` < 1.
    """
    if n < 1 or m < 1:
        raise ParameterError(f"flop_model needs n, m >= 1, got n={n}, m={m}", contract="sylvester_solver")
    if steps < 1:
        raise ParameterError(f"steps must be >= 1, got {steps}", contract="sylvester_solver")
    settings = get_settings()

    if method == "r-thr":
        return r_thr_multiplications(n, m)
    if method == "kronecker-gauss":
        return kronecker_multiplications(n, m)
    if method == "r-thr-centro":
        # Two half-size solves on each side of the split.
        return 2.0 * r_thr_multiplications(n / 2.0, m / 2.0)
    if method == "rk4":
        # Four right-hand-side evaluations plus the update, per step.
        return steps * (4.0 * (n * n * m + n * m * m) + 7.0 * n * m)
    if method == "bartels-stewart":
        return _schur(n) + _schur(m) + _coupling(n, m)
    if method == "hessenberg-schur":
        return settings.hessenberg_cost_coeff * n**3 + _schur(m) + _coupling(n, m)
    if method == "centro-split":
        gs, rs = _halves(n), _halves(m)
        factor = sum(_schur(s) for s in gs) + sum(_schur(s) for s in rs)
        return factor + sum(_coupling(a, b) for a in gs for b in rs)
    if method == "backward-euler":
        return _schur(n) + _schur(m) + steps * _coupling(n, m)
    raise ParameterError(
        f"Unknown method: {method!r}. Known: {', '.join(METHODS)}",
        contract="sylvester_solver",
    )


def cost_ratio(method: str, n: int, m: int, baseline: str = "kronecker-gauss") -> float:
    """``flop_model(method) / flop_model(baseline)`` at the same size."""
    return flop_model(method, n, m) / flop_model(baseline, n, m)
