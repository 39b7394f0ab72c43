"""Cost benchmarks: model ratios, instrumented counts and wall times.

Problems are generated deterministically from ``settings.bench_seed``, so
counted multiplications are reproducible run to run; wall times are not
and are kept out of the main tables.
"""

from __future__ import annotations

import logging
from collections.abc import Callable
from dataclasses import asdict, dataclass, field
from functools import partial

import numpy as np
import pandas as pd

from ..config import get_settings
from ..core.io import load_config
from ..core.parallel import run_parallel
from ..errors import DqLyapunovError, ParameterError
from ..pde import (
    MANUFACTURED,
    ConvDiff3dSpec,
    ConvDiffSpec,
    PoissonSpec,
    TransientSpec,
    assemble_convdiff,
    assemble_convdiff3d,
    assemble_poisson,
    make_grid,
    step_transient,
)
from ..sylvester import (
    METHOD_TAGS,
    SolveReport,
    SylvesterProblem,
    flop_model,
    solve_bartels_stewart,
    solve_kronecker_baseline,
    solve_sylvester,
    solve_sylvester_centro,
)

logger = logging.getLogger(__name__)

_CONFIG = load_config(__file__)
CLAIMS: dict[str, dict[int, float]] = {
    kind: {int(n): float(v) for n, v in ratios.items()} for kind, ratios in _CONFIG["claims"].items()
}
DEFAULT_SIZES: tuple[int, ...] = tuple(_CONFIG["default_sizes"])

PROBLEM_KINDS = ("poisson", "convdiff", "convdiff3d", "transient")
TRANSIENT_SCHEMES = ("backward-euler", "rk4")

RECORD_COLUMNS = [
    "case_id",
    "problem",
    "N",
    "method",
    "counted_multiplications",
    "model_multiplications",
    "relative_residual",
    "notes",
    "error",
]


@dataclass(frozen=True)
class BenchCase:
    """One problem kind over several grid sizes and methods.

    Args:
        problem: One of ``PROBLEM_KINDS``.
        sizes: Points per axis (N), boundaries included.
        methods: Solver tags; time schemes for ``transient``.
        repetitions: Timed runs per (size, method), >= 3
            (default: ``settings.bench_repetitions``).
    """

    problem: str = "poisson"
    sizes: tuple[int, ...] = DEFAULT_SIZES
    methods: tuple[str, ...] = ("bartels-stewart", "kronecker-gauss")
    repetitions: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "sizes", tuple(int(s) for s in self.sizes))
        object.__setattr__(self, "methods", tuple(self.methods))
        if self.repetitions is None:
            object.__setattr__(self, "repetitions", get_settings().bench_repetitions)
        if self.problem not in PROBLEM_KINDS:
            raise ParameterError(
                f"Unknown problem: {self.problem!r}. Available: {', '.join(PROBLEM_KINDS)}",
                contract="bench_harness",
            )
        if not self.sizes:
            raise ParameterError("A bench case needs at least one size", contract="bench_harness")
        if min(self.sizes) < 3:
            raise ParameterError(f"Grid sizes must be >= 3, got {min(self.sizes)}", contract="bench_harness")
        if not self.methods:
            raise ParameterError("A bench case needs at least one method", contract="bench_harness")
        allowed = TRANSIENT_SCHEMES if self.problem == "transient" else METHOD_TAGS
        unknown = [m for m in self.methods if m not in allowed]
        if unknown:
            raise ParameterError(
                f"Unknown method(s) for {self.problem}: {', '.join(unknown)}. Available: {', '.join(allowed)}",
                contract="bench_harness",
            )
        if self.repetitions < 3:
            raise ParameterError(f"repetitions must be >= 3, got {self.repetitions}", contract="bench_harness")

    @property
    def label(self) -> str:
        return f"{self.problem}[{','.join(map(str, self.sizes))}]"


@dataclass(frozen=True)
class BenchRecord:
    """Result row for one (problem, N, method)."""

    case_id: str
    problem: str
    size: int
    method: str
    counted_multiplications: int | None = None
    model_multiplications: float | None = None
    wall_time: float | None = None
    relative_residual: float | None = None
    notes: tuple[str, ...] = field(default_factory=tuple)
    error: str | None = None

    def to_dict(self) -> dict:
        d = asdict(self)
        d["N"] = d.pop("size")
        d["notes"] = "; ".join(self.notes)
        return d


def _rng(size: int) -> np.random.Generator:
    return np.random.default_rng(get_settings().bench_seed + size)


def build_problem(problem: str, size: int) -> SylvesterProblem:
    """Deterministic steady problem of *problem* kind at N = *size*.

    The source is a seeded random interior field.
    """
    rng = _rng(size)
    if problem == "poisson":
        grid = make_grid((size, size))
        return assemble_poisson(PoissonSpec(grid=grid, source=rng.standard_normal(grid.interior_shape)))
    if problem == "convdiff":
        grid = make_grid((size, size))
        return assemble_convdiff(ConvDiffSpec(grid=grid, source=rng.standard_normal(grid.interior_shape)))
    if problem == "convdiff3d":
        grid = make_grid((size, size, size))
        return assemble_convdiff3d(ConvDiff3dSpec(grid=grid, source=rng.standard_normal(grid.interior_shape)))
    raise ParameterError(f"No steady problem for kind {problem!r}", contract="bench_harness")


def _transient_runner(size: int, scheme: str) -> Callable[[], SolveReport]:
    rng = _rng(size)
    grid = make_grid((size, size))
    steady = ConvDiffSpec(grid=grid, source=rng.standard_normal(grid.interior_shape))
    spec = TransientSpec(
        steady=steady,
        initial=rng.standard_normal(grid.interior_shape),
        dt=float(_CONFIG["transient"]["dt"]),
        steps=int(_CONFIG["transient"]["steps"]),
        scheme=scheme,
    )
    return lambda: step_transient(spec).report


def _steady_runner(problem: SylvesterProblem, method: str) -> Callable[[], SolveReport]:
    return lambda: solve_sylvester(problem, method).report


def _measure(case: BenchCase, size: int, method: str, run_once: Callable[[], SolveReport]) -> BenchRecord:
    case_id = f"{case.problem}-N{size}-{method}"
    base = {"case_id": case_id, "problem": case.problem, "size": size, "method": method}
    try:
        reports = [run_once() for _ in range(case.repetitions)]
    except DqLyapunovError as e:
        logger.warning(f"[{case_id}] failed: {e}")
        return BenchRecord(**base, error=f"{e.contract}: {e}")

    first = reports[0]
    notes = list(first.notes)
    if len({r.counted_multiplications for r in reports}) > 1:
        notes.append("counted multiplications differ between repetitions")
    residual = max(r.relative_residual for r in reports)
    row = {
        **base,
        "method": first.method,
        "counted_multiplications": first.counted_multiplications,
        "model_multiplications": first.model_multiplications,
        "relative_residual": residual,
    }
    tol = get_settings().residual_tol
    if residual > tol:
        logger.warning(f"[{case_id}] residual {residual:.3e} exceeds {tol:.1e}; timing discarded")
        return BenchRecord(**row, notes=tuple(notes), error=f"residual {residual:.3e} exceeds {tol:.1e}")
    wall = float(np.median([r.wall_time for r in reports]))
    return BenchRecord(**row, wall_time=wall, notes=tuple(notes))


def run_bench(case: BenchCase) -> list[BenchRecord]:
    """Run every (size, method) of *case* ``case.repetitions`` times.

    Failures are recorded on the row (``error``) instead of raised.
    """
    records = []
    for size in case.sizes:
        if case.problem == "transient":
            for scheme in case.methods:
                try:
                    runner = _transient_runner(size, scheme)
                except DqLyapunovError as e:
                    records.append(
                        BenchRecord(f"transient-N{size}-{scheme}", "transient", size, scheme, error=f"{e.contract}: {e}")
                    )
                    continue
                records.append(_measure(case, size, scheme, runner))
            continue

        try:
            problem = build_problem(case.problem, size)
        except DqLyapunovError as e:
            logger.warning(f"[{case.problem}-N{size}] could not assemble: {e}")
            records.extend(
                BenchRecord(f"{case.problem}-N{size}-{m}", case.problem, size, m, error=f"{e.contract}: {e}")
                for m in case.methods
            )
            continue
        for method in case.methods:
            records.append(_measure(case, size, method, _steady_runner(problem, method)))
    logger.info(f"Bench {case.label}: {len(records)} records")
    return records


def run_benches(cases: list[BenchCase], max_workers: int | None = None) -> list[BenchRecord]:
    """Run several cases concurrently; records come back in case order."""
    tasks = {f"{i}:{case.label}": partial(run_bench, case) for i, case in enumerate(cases)}
    results = run_parallel(tasks, max_workers=max_workers)
    return [record for key in tasks if key in results for record in results[key]]


def records_frame(records: list[BenchRecord], timings: bool = False) -> pd.DataFrame:
    """Records as a DataFrame; ``timings=True`` adds the ``wall_time`` column."""
    columns = RECORD_COLUMNS + (["wall_time"] if timings else [])
    frame = pd.DataFrame([r.to_dict() for r in records], columns=columns)
    frame["counted_multiplications"] = frame["counted_multiplications"].astype("Int64")
    return frame


def run_ratio_table(sizes: list[int]) -> pd.DataFrame:
    """Model and counted cost ratios against the Kronecker + Gauss baseline.

    For each N the same seeded Poisson problem (Chebyshev grid) is solved by
    Bartels-Stewart, the centro split and the baseline.

    Columns: ``N, n, model_ratio, counted_ratio, centro_model_ratio,
    centro_counted_ratio, claimed_ratio, claimed_centro_ratio``.

    Raises:
        ParameterError: Empty list or a size below 5.
    """
    if not sizes:
        raise ParameterError("At least one size is required", contract="bench_harness")
    rows = []
    for size in sizes:
        if size < 5:
            raise ParameterError(f"Ratio table sizes must be >= 5, got {size}", contract="bench_harness")
        n = size - 2
        grid = make_grid((size, size), "chebyshev-lobatto")
        problem = assemble_poisson(PoissonSpec(grid=grid, source=_rng(size).standard_normal(grid.interior_shape)))

        baseline = solve_kronecker_baseline(problem).report.counted_multiplications
        bs = solve_bartels_stewart(problem).report.counted_multiplications
        centro = solve_sylvester_centro(problem).report.counted_multiplications
        baseline_model = flop_model("kronecker-gauss", n, n)
        rows.append(
            {
                "N": size,
                "n": n,
                "model_ratio": flop_model("r-thr", n, n) / baseline_model,
                "counted_ratio": bs / baseline,
                "centro_model_ratio": flop_model("r-thr-centro", n, n) / baseline_model,
                "centro_counted_ratio": centro / baseline,
                "claimed_ratio": CLAIMS["sylvester"].get(size, np.nan),
                "claimed_centro_ratio": CLAIMS["centro"].get(size, np.nan),
            }
        )
    logger.info(f"Ratio table for N = {', '.join(map(str, sizes))}")
    return pd.DataFrame(rows)


def run_convergence(
    problem: str,
    sizes: list[int],
    kind: str | None = None,
    method: str = "auto",
    **coefficients: float,
) -> pd.DataFrame:
    """Max interior error of a manufactured solution over grid sizes.

    Args:
        problem: ``poisson``, ``convdiff`` or ``convdiff3d``.
        sizes: Points per axis (N).
        kind: Grid kind (default: ``settings.default_grid``).
        method: Solver tag.
        **coefficients: Passed to the manufactured case (``alpha``, ``beta``, ``gamma``).

    Returns:
        DataFrame with columns ``N, max_error``.

    Raises:
        ParameterError: Unknown problem or empty size list.
    """
    if problem not in MANUFACTURED:
        raise ParameterError(
            f"No manufactured solution for {problem!r}. Available: {', '.join(MANUFACTURED)}",
            contract="bench_harness",
        )
    if not sizes:
        raise ParameterError("At least one size is required", contract="bench_harness")
    dims = 3 if problem == "convdiff3d" else 2
    rows = []
    for size in sizes:
        case = MANUFACTURED[problem](make_grid((size,) * dims, kind), **coefficients)
        solution = case.solve(method)
        rows.append({"N": int(size), "max_error": solution.max_error})
        logger.debug(f"{problem} N={size}: max error {solution.max_error:.3e}")
    return pd.DataFrame(rows, columns=["N", "max_error"])
