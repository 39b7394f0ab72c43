"""Export utilities for solution fields, solve reports and bench tables."""

import json
import logging
from collections.abc import Sequence
from itertools import product
from pathlib import Path

import numpy as np
import pandas as pd
import yaml

logger = logging.getLogger(__name__)

_AXIS_NAMES = ("x", "y", "z")


def format_float(value: float) -> str:
    """Shortest round-trip decimal representation (at most 17 significant digits)."""
    return repr(float(value))


def field_frame(field: np.ndarray, points: Sequence[np.ndarray]) -> pd.DataFrame:
    """Long-format table of a full-grid field.

    Args:
        field: Array of shape ``(N_x, N_y[, N_z])``.
        points: One coordinate array per axis.

    Returns:
        DataFrame with columns ``x, y[, z], value``, row-major over grid
        points (last axis varies fastest).
    """
    if field.ndim != len(points) or field.ndim > len(_AXIS_NAMES):
        raise ValueError(f"Field of rank {field.ndim} does not match {len(points)} axes")
    for axis, pts in enumerate(points):
        if len(pts) != field.shape[axis]:
            raise ValueError(f"Axis {axis} has {len(pts)} points, field has {field.shape[axis]}")

    coords = list(product(*[np.asarray(p, dtype=float) for p in points]))
    frame = pd.DataFrame(coords, columns=list(_AXIS_NAMES[: field.ndim]))
    frame["value"] = field.reshape(-1)
    return frame


def _write_csv(df: pd.DataFrame, path: str | Path) -> None:
    out = df.copy()
    for col in out.columns:
        if pd.api.types.is_float_dtype(out[col]):
            out[col] = out[col].map(format_float)
    out.to_csv(path, index=False, lineterminator="\n")


def export_field_csv(frame: pd.DataFrame, path: str | Path) -> None:
    """Export a field table (see ``field_frame``) to CSV.

    Args:
        frame: Field table.
        path: Output file path.
    """
    _write_csv(frame, path)
    logger.info(f"Exported {len(frame)} grid values to {path}")


def export_records_csv(df: pd.DataFrame, path: str | Path) -> None:
    """Export a bench table to CSV; identical tables give identical bytes."""
    _write_csv(df, path)
    logger.info(f"Exported {len(df)} records to {path}")


def _jsonable(value):
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (np.floating, float)):
        value = float(value)
        return value if np.isfinite(value) else None
    if isinstance(value, (np.bool_,)):
        return bool(value)
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if value is pd.NA or value is None:
        return None
    return value


def export_records_json(df: pd.DataFrame, path: str | Path) -> None:
    """Export a bench table to JSON as an array of row objects."""
    rows = [_jsonable(row) for row in df.to_dict(orient="records")]
    Path(path).write_text(json.dumps(rows, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    logger.info(f"Exported {len(rows)} records to {path}")


def export_report_json(report: dict, path: str | Path) -> None:
    """Write a solve report (or any flat mapping) as sorted JSON."""
    Path(path).write_text(json.dumps(_jsonable(report), indent=2, sort_keys=True) + "\n", encoding="utf-8")
    logger.info(f"Wrote report to {path}")


def timings_path(path: str | Path) -> Path:
    """Sidecar path holding wall times and timestamps for *path*."""
    p = Path(path)
    return p.with_name(p.stem + ".timings.json")


def load_config(caller_file: str) -> dict:
    """Load the YAML file adjacent to *caller_file* (``harness.py`` -> ``harness.yaml``)."""
    yaml_path = Path(caller_file).with_suffix(".yaml")
    with open(yaml_path, encoding="utf-8") as f:
        return yaml.safe_load(f)
