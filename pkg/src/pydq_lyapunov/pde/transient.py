"""Transient 2-D convection-diffusion as a linear matrix ODE.

    dphi/dt = G phi + phi R - Q

with G, R, Q from ``assemble_convdiff``. Backward Euler solves, every step,

    (I/dt - G) phi_{k+1} + phi_{k+1} (-R) = phi_k / dt - Q

reusing one pair of Schur forms for all steps. RK4 evaluates the right-hand
side four times per step and solves nothing.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass
from enum import Enum

import numpy as np

from ..core.linalg import DenseMatrix, FlopCounter, as_dense, matmul
from ..dq.boundary import reconstruct_full_field
from ..errors import NoUniqueSolutionError, ParameterError, ShapeError, TransientStepError
from ..sylvester import BartelsStewartFactorization, SolveReport, SylvesterProblem, flop_model
from .base import AssembledProblem
from .convdiff import ConvDiffSpec, assemble_convdiff_parts

logger = logging.getLogger(__name__)


class TimeScheme(str, Enum):
    BACKWARD_EULER = "backward-euler"
    RK4 = "rk4"


@dataclass(frozen=True, eq=False)
class TransientSpec:
    """Initial-value problem around a steady convection-diffusion spec.

    Args:
        steady: Operators, source and boundary data.
        initial: Interior field at t = 0 (n x m).
        dt: Time step, > 0.
        steps: Number of steps, > 0.
        scheme: ``backward-euler`` (default) or ``rk4``.
    """

    steady: ConvDiffSpec
    initial: DenseMatrix
    dt: float
    steps: int
    scheme: TimeScheme = TimeScheme.BACKWARD_EULER

    def __post_init__(self):
        object.__setattr__(self, "scheme", TimeScheme(self.scheme))
        if not (np.isfinite(self.dt) and self.dt > 0):
            raise ParameterError(f"dt must be finite and > 0, got {self.dt}", contract="pde_problems")
        if int(self.steps) != self.steps or self.steps < 1:
            raise ParameterError(f"steps must be a positive integer, got {self.steps}", contract="pde_problems")
        if not np.isfinite(self.dt * self.steps):
            raise ParameterError("dt * steps must be finite", contract="pde_problems")
        initial = as_dense(self.initial, "initial field")
        if initial.shape != self.steady.grid.interior_shape:
            raise ShapeError(
                f"Initial field has shape {initial.shape}, interior grid is {self.steady.grid.interior_shape}"
            )
        object.__setattr__(self, "initial", initial)
        object.__setattr__(self, "steps", int(self.steps))


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Interior fields at ``times``; ``fields[0]`` is the initial field."""

    times: np.ndarray
    fields: np.ndarray
    report: SolveReport
    assembled: AssembledProblem

    @property
    def final(self) -> DenseMatrix:
        return self.fields[-1]

    def full_field(self, k: int = -1) -> DenseMatrix:
        """Field at step *k* with boundary values recovered."""
        red_x, red_y = self.assembled.reduced
        return reconstruct_full_field(self.fields[k], red_x, red_y)


def _rhs(problem: SylvesterProblem, phi: DenseMatrix, counter: FlopCounter) -> DenseMatrix:
    return matmul(problem.g, phi, counter) + matmul(phi, problem.r, counter) - problem.q


def _backward_euler(spec: TransientSpec, problem: SylvesterProblem, counter: FlopCounter):
    n, m = problem.n, problem.m
    inv_dt = 1.0 / spec.dt
    lhs_g = inv_dt * np.eye(n) - problem.g
    lhs_r = -problem.r
    try:
        fact = BartelsStewartFactorization.factorize(lhs_g, lhs_r, counter)
    except NoUniqueSolutionError as e:
        raise TransientStepError(
            f"Backward-Euler step matrix is singular at dt={spec.dt}: {e}; retry with dt={spec.dt / 2}",
            dt=spec.dt,
            eigenvalues=e.eigenvalues,
        ) from e

    fields = [spec.initial]
    worst = 0.0
    phi = spec.initial
    for _ in range(spec.steps):
        q = inv_dt * phi - problem.q
        counter.add(n * m)
        phi = fact.solve(q, counter)
        worst = max(worst, SylvesterProblem(g=lhs_g, r=lhs_r, q=q).relative_residual(phi))
        fields.append(phi)
    return fields, worst, ()


def _rk4(spec: TransientSpec, problem: SylvesterProblem, counter: FlopCounter):
    dt = spec.dt
    n, m = problem.n, problem.m
    fields = [spec.initial]
    phi = spec.initial
    for _ in range(spec.steps):
        k1 = _rhs(problem, phi, counter)
        k2 = _rhs(problem, phi + 0.5 * dt * k1, counter)
        k3 = _rhs(problem, phi + 0.5 * dt * k2, counter)
        k4 = _rhs(problem, phi + dt * k3, counter)
        phi = phi + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        counter.add(7 * n * m)
        fields.append(phi)
    return fields, 0.0, ("rk4 performs no linear solves; residual not applicable",)


def step_transient(spec: TransientSpec) -> Trajectory:
    """Integrate from ``spec.initial`` for ``spec.steps`` steps.

    Raises:
        TransientStepError: Backward-Euler step matrix singular at ``spec.dt``;
            ``suggested_dt`` carries a smaller step.
    """
    assembled = assemble_convdiff_parts(spec.steady)
    problem = assembled.problem
    counter = FlopCounter()
    start = time.perf_counter()
    if spec.scheme is TimeScheme.BACKWARD_EULER:
        fields, residual, notes = _backward_euler(spec, problem, counter)
    else:
        fields, residual, notes = _rk4(spec, problem, counter)
    wall = time.perf_counter() - start

    report = SolveReport(
        method=spec.scheme.value,
        counted_multiplications=counter.multiplications,
        model_multiplications=flop_model(spec.scheme.value, problem.n, problem.m, steps=spec.steps),
        wall_time=wall,
        relative_residual=residual,
        notes=notes,
        extra={"steps": spec.steps, "dt": spec.dt},
    )
    logger.info(f"Transient {spec.scheme.value}: {spec.steps} steps of dt={spec.dt}")
    return Trajectory(
        times=spec.dt * np.arange(spec.steps + 1),
        fields=np.stack(fields),
        report=report,
        assembled=assembled,
    )
