"""
Shared configuration for all solvers.

Defaults live in config.yaml next to this file.

Runtime configuration:
    import pydq_lyapunov as dq
    dq.configure(kronecker_unknown_cap=1024, bench_repetitions=5)
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, replace
from pathlib import Path

import yaml


def _load_defaults() -> dict:
    """Load default values from config.yaml."""
    config_path = Path(__file__).parent / "config.yaml"
    with open(config_path) as f:
        return yaml.safe_load(f)


_DEFAULTS = _load_defaults()


@dataclass(frozen=True)
class Settings:
    """Centralized configuration for pydq-lyapunov.

    All values have sensible defaults. Override at runtime via ``configure()``.
    """

    # Parallelism
    max_workers: int = _DEFAULTS["max_workers"]

    # Real Schur
    schur_max_iter_factor: int = _DEFAULTS["schur_max_iter_factor"]
    schur_deflation_tol: float = _DEFAULTS["schur_deflation_tol"]

    # Tolerances
    pivot_tol: float = _DEFAULTS["pivot_tol"]
    neumann_pivot_tol: float = _DEFAULTS["neumann_pivot_tol"]
    grid_min_spacing: float = _DEFAULTS["grid_min_spacing"]
    collision_tol: float = _DEFAULTS["collision_tol"]
    symmetry_tol: float = _DEFAULTS["symmetry_tol"]

    # Size caps
    kronecker_unknown_cap: int = _DEFAULTS["kronecker_unknown_cap"]
    convdiff3d_unknown_cap: int = _DEFAULTS["convdiff3d_unknown_cap"]

    # Benchmarks
    residual_tol: float = _DEFAULTS["residual_tol"]
    bench_repetitions: int = _DEFAULTS["bench_repetitions"]
    bench_seed: int = _DEFAULTS["bench_seed"]

    default_grid: str = _DEFAULTS["default_grid"]

    # Cost-model calibration
    schur_cost_coeff: float = _DEFAULTS["schur_cost_coeff"]
    hessenberg_cost_coeff: float = _DEFAULTS["hessenberg_cost_coeff"]
    coupling_cost_coeff: float = _DEFAULTS["coupling_cost_coeff"]


# Module-level singleton
_settings: Settings | None = None
_settings_lock = threading.Lock()


def get_settings() -> Settings:
    """Get the current settings (creates defaults on first call)."""
    global _settings
    if _settings is not None:
        return _settings
    with _settings_lock:
        if _settings is None:
            _settings = Settings()
        return _settings


def configure(**kwargs) -> Settings:
    """Override configuration at runtime.

    Unknown keys raise ``TypeError``. Call with no args to reset to defaults.

    Example::

        from pydq_lyapunov.config import configure
        configure(schur_deflation_tol=1e-15, max_workers=8)

    Returns:
        The new Settings instance.
    """
    global _settings
    with _settings_lock:
        if not kwargs:
            _settings = Settings()
        else:
            _settings = replace(get_settings() if _settings is None else _settings, **kwargs)
    return _settings
