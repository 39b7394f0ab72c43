"""Cost benchmarks against the Kronecker + Gauss baseline."""

from .harness import (
    CLAIMS,
    PROBLEM_KINDS,
    BenchCase,
    BenchRecord,
    build_problem,
    records_frame,
    run_bench,
    run_benches,
    run_convergence,
    run_ratio_table,
)

__all__ = [
    "CLAIMS",
    "PROBLEM_KINDS",
    "BenchCase",
    "BenchRecord",
    "build_problem",
    "records_frame",
    "run_bench",
    "run_benches",
    "run_convergence",
    "run_ratio_table",
]
