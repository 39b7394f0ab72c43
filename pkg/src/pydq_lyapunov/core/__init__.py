"""Core utilities: dense linear algebra, parallel execution, and I/O."""

from .io import export_field_csv, export_records_csv, export_records_json, export_report_json, field_frame
from .linalg import (
    DenseMatrix,
    FlopCounter,
    SchurForm,
    as_dense,
    hessenberg,
    kron,
    lu_solve,
    matmul,
    real_schur,
    unstack,
    vec_stack,
)
from .parallel import run_parallel

__all__ = [
    "DenseMatrix",
    "FlopCounter",
    "SchurForm",
    "as_dense",
    "hessenberg",
    "kron",
    "lu_solve",
    "matmul",
    "real_schur",
    "unstack",
    "vec_stack",
    "run_parallel",
    "field_frame",
    "export_field_csv",
    "export_records_csv",
    "export_records_json",
    "export_report_json",
]
