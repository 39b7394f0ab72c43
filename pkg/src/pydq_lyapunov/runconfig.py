"""JSON run configuration for the CLI.

Example::

    {
      "problem": "poisson",
      "grid": {"kind": "chebyshev-lobatto", "points": [11, 11]},
      "beta": 1.0,
      "source": "manufactured-sin",
      "method": "auto",
      "output": {"field": "field.csv", "report": "report.json"}
    }

``grid`` may instead list its axes, e.g.
``{"axes": [{"kind": "uniform", "n": 9}, {"kind": "explicit", "values": [0, 0.3, 1]}]}``.
Boundary data goes under ``bcs``, keyed by axis::

    "bcs": {"x": {"left": {"kind": "dirichlet", "value": 1.0},
                  "right": {"kind": "neumann", "value": 0.0}}}

Unknown keys are rejected at every level.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np

from .config import get_settings
from .dq.boundary import BoundaryCondition, FaceCondition
from .dq.operators import GridSpec, explicit_points, make_axis
from .errors import ConfigError, DqLyapunovError
from .pde import (
    MANUFACTURED,
    ConvDiff3dSpec,
    ConvDiffSpec,
    PdeSolution,
    PoissonSpec,
    Trajectory,
    TransientSpec,
    solve_convdiff,
    solve_convdiff3d,
    solve_poisson,
    step_transient,
)
from .sylvester import METHOD_TAGS

logger = logging.getLogger(__name__)

PROBLEMS = {"poisson": 2, "convdiff": 2, "convdiff3d": 3, "transient": 2}
COEFFICIENTS = {
    "poisson": ("beta",),
    "convdiff": ("alpha", "beta"),
    "convdiff3d": ("beta", "gamma"),
    "transient": ("alpha", "beta"),
}
SOURCES = ("zero", "manufactured-sin")
AXIS_NAMES = ("x", "y", "z")

_TOP_KEYS = {"problem", "grid", "alpha", "beta", "gamma", "bcs", "source", "method", "transient", "output"}
_TRANSIENT_KEYS = {"dt", "steps", "scheme"}
_OUTPUT_KEYS = {"field", "report"}


def _reject_unknown(data: dict, allowed: set[str], where: str) -> None:
    if not isinstance(data, dict):
        raise ConfigError(f"{where} must be an object")
    unknown = sorted(set(data) - allowed)
    if unknown:
        raise ConfigError(f"Unknown key(s) in {where}: {', '.join(unknown)}")


def _parse_grid(data: Any, dims: int) -> GridSpec:
    _reject_unknown(data, {"kind", "points", "axes"}, "grid")
    if "axes" in data:
        if "points" in data:
            raise ConfigError("grid takes either 'points' or 'axes', not both")
        axes = []
        for i, axis in enumerate(data["axes"]):
            _reject_unknown(axis, {"kind", "n", "values"}, f"grid.axes[{i}]")
            kind = axis.get("kind", data.get("kind", get_settings().default_grid))
            if kind == "explicit" or "values" in axis:
                axes.append(explicit_points(axis["values"]))
            else:
                axes.append(make_axis(kind, int(axis["n"])))
    else:
        kind = data.get("kind", get_settings().default_grid)
        points = data.get("points")
        if not isinstance(points, list) or not points:
            raise ConfigError("grid.points must be a non-empty list of point counts")
        axes = [make_axis(kind, int(n)) for n in points]
    if len(axes) != dims:
        raise ConfigError(f"grid has {len(axes)} axes, problem needs {dims}")
    return GridSpec(tuple(axes))


def _parse_face(data: Any, where: str) -> FaceCondition:
    _reject_unknown(data, {"kind", "value"}, where)
    return FaceCondition(data.get("kind", "dirichlet"), float(data.get("value", 0.0)))


def _parse_bcs(data: Any, dims: int) -> tuple[BoundaryCondition, ...] | None:
    if data is None:
        return None
    names = AXIS_NAMES[:dims]
    _reject_unknown(data, set(names), "bcs")
    bcs = []
    for name in names:
        axis = data.get(name, {})
        _reject_unknown(axis, {"left", "right"}, f"bcs.{name}")
        bcs.append(
            BoundaryCondition(
                left=_parse_face(axis.get("left", {}), f"bcs.{name}.left"),
                right=_parse_face(axis.get("right", {}), f"bcs.{name}.right"),
            )
        )
    return tuple(bcs)


def _parse_source(data: Any) -> str | float:
    if isinstance(data, str):
        if data not in SOURCES:
            raise ConfigError(f"Unknown source {data!r}. Available: {', '.join(SOURCES)} or {{'constant': c}}")
        return data
    if isinstance(data, dict):
        _reject_unknown(data, {"constant"}, "source")
        return float(data["constant"])
    raise ConfigError("source must be 'zero', 'manufactured-sin' or {'constant': c}")


@dataclass(frozen=True, eq=False)
class RunConfig:
    """Validated run configuration.

    ``spec`` is the problem spec the run solves; ``exact`` is the exact
    field for manufactured sources, else ``None``.
    """

    problem: str
    spec: PoissonSpec | ConvDiffSpec | ConvDiff3dSpec | TransientSpec
    source: str | float = "zero"
    method: str = "auto"
    exact: Any = None
    output: dict[str, str] = field(default_factory=dict)

    @property
    def manufactured(self) -> bool:
        return self.source == "manufactured-sin"

    @classmethod
    def from_dict(cls, data: dict) -> RunConfig:
        """Validate a parsed JSON document.

        Raises:
            ConfigError: Unknown keys, missing fields or values outside
                module preconditions.
        """
        _reject_unknown(data, _TOP_KEYS, "config")
        try:
            return cls._build(data)
        except ConfigError:
            raise
        except (DqLyapunovError, KeyError, TypeError, ValueError) as e:
            raise ConfigError(f"Invalid configuration: {e}") from e

    @classmethod
    def _build(cls, data: dict) -> RunConfig:
        problem = data.get("problem")
        if problem not in PROBLEMS:
            raise ConfigError(f"Unknown problem {problem!r}. Available: {', '.join(PROBLEMS)}")
        dims = PROBLEMS[problem]
        extra = sorted({"alpha", "beta", "gamma"} & set(data) - set(COEFFICIENTS[problem]))
        if extra:
            raise ConfigError(f"{problem} takes no coefficient(s) {', '.join(extra)}")
        coeffs = {k: float(data[k]) for k in COEFFICIENTS[problem] if k in data}

        method = data.get("method", "auto")
        if method not in METHOD_TAGS:
            raise ConfigError(f"Unknown method {method!r}. Available: {', '.join(METHOD_TAGS)}")
        output = data.get("output", {})
        _reject_unknown(output, _OUTPUT_KEYS, "output")
        if problem != "transient" and "transient" in data:
            raise ConfigError("'transient' settings only apply to the transient problem")

        grid = _parse_grid(data.get("grid"), dims)
        bcs = _parse_bcs(data.get("bcs"), dims)
        source = _parse_source(data.get("source", "zero"))

        exact = None
        steady_kind = "convdiff" if problem == "transient" else problem
        if source == "manufactured-sin":
            if bcs is not None and not all(bc.homogeneous_dirichlet for bc in bcs):
                raise ConfigError("manufactured-sin needs homogeneous Dirichlet data on every face")
            case = MANUFACTURED[steady_kind](grid, **coeffs)
            spec, exact = case.spec, case.exact
        else:
            kwargs = dict(coeffs, grid=grid, source=None if source == "zero" else source)
            if bcs is not None:
                kwargs["bcs"] = bcs
            spec = {"poisson": PoissonSpec, "convdiff": ConvDiffSpec, "convdiff3d": ConvDiff3dSpec}[steady_kind](
                **kwargs
            )

        if problem == "transient":
            settings = data.get("transient", {})
            _reject_unknown(settings, _TRANSIENT_KEYS, "transient")
            spec = TransientSpec(
                steady=spec,
                initial=np.zeros(grid.interior_shape),
                dt=float(settings.get("dt", 0.01)),
                steps=int(settings.get("steps", 100)),
                scheme=settings.get("scheme", "backward-euler"),
            )
            exact = None
        return cls(problem=problem, spec=spec, source=source, method=method, exact=exact, output=dict(output))

    @classmethod
    def load(cls, path: str | Path) -> RunConfig:
        """Read and validate a JSON config file.

        Raises:
            ConfigError: Unreadable file, invalid JSON or invalid content.
        """
        try:
            data = json.loads(Path(path).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as e:
            raise ConfigError(f"Cannot read config {path}: {e}") from e
        config = cls.from_dict(data)
        logger.info(f"Loaded {config.problem} config from {path}")
        return config

    def run(self, method: str | None = None) -> PdeSolution | Trajectory:
        """Solve the configured problem (``method`` overrides the config)."""
        method = method or self.method
        if self.problem == "transient":
            return step_transient(self.spec)
        solver = {"poisson": solve_poisson, "convdiff": solve_convdiff, "convdiff3d": solve_convdiff3d}[self.problem]
        return solver(self.spec, method=method, exact=self.exact)
