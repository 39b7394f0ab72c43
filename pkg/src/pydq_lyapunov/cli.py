"""Command-line interface for pydq-lyapunov."""

from __future__ import annotations

import logging
import sys
from datetime import datetime, timezone
from pathlib import Path

import click
import numpy as np

import pydq_lyapunov as dq

from .bench.harness import DEFAULT_SIZES, PROBLEM_KINDS, TRANSIENT_SCHEMES
from .core.io import export_records_json, timings_path
from .dq.operators import GridKind
from .errors import ConfigError, DqLyapunovError, ParameterError
from .pde import MANUFACTURED, PdeSolution
from .runconfig import COEFFICIENTS, RunConfig
from .sylvester import METHOD_TAGS

EXIT_USAGE = 2
EXIT_SOLVER = 3
GRID_KINDS = [k.value for k in GridKind if k is not GridKind.EXPLICIT]


def _fail(e: DqLyapunovError) -> None:
    click.echo(f"Error [{e.contract}]: {e}", err=True)
    sys.exit(EXIT_USAGE if isinstance(e, ConfigError) else EXIT_SOLVER)


def _parse_sizes(ctx, param, value: str | None) -> tuple[int, ...] | None:
    if value is None:
        return None
    parts = [p.strip() for p in value.split(",") if p.strip()]
    if not parts:
        raise click.BadParameter("needs at least one size, e.g. 7,11")
    try:
        return tuple(int(p) for p in parts)
    except ValueError:
        raise click.BadParameter(f"not a comma-separated list of integers: {value!r}") from None


def _parse_list(value: str | None) -> tuple[str, ...] | None:
    if value is None:
        return None
    return tuple(s.strip() for s in value.split(",") if s.strip())


@click.group()
@click.version_option(version=dq.__version__, prog_name="pydq-lyapunov")
@click.option("-v", "--verbose", count=True, help="Log progress (repeat for debug output).")
def main(verbose):
    """DQ Poisson / convection-diffusion solver via Sylvester equations."""
    if verbose:
        logging.basicConfig(
            level=logging.DEBUG if verbose > 1 else logging.INFO,
            format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        )


@main.command()
@click.option("--config", "config_path", required=True, type=click.Path(dir_okay=False), help="JSON run config.")
@click.option("--method", default=None, type=click.Choice(METHOD_TAGS), help="Override the config's method.")
@click.option("--compare", is_flag=True, help="Cross-check kronecker-gauss against bartels-stewart.")
@click.option("--out", "out_path", default=None, type=click.Path(), help="Field CSV path (report goes next to it).")
def solve(config_path, method, compare, out_path):
    """Solve the problem described by a JSON config."""
    try:
        run = RunConfig.load(config_path)
        if compare and run.problem == "transient":
            raise ConfigError("--compare needs a steady problem")
        result = run.run(method)
        report = dict(result.report.to_dict(), problem=run.problem)
        if isinstance(result, PdeSolution):
            field, grid = result.field, result.grid
            report["max_error"] = result.max_error
        else:
            field, grid = result.full_field(-1), run.spec.steady.grid
            report["final_time"] = float(result.times[-1])
        report["grid"] = list(grid.shape)
        if compare:
            report["compare_max_diff"] = _compare(run)
    except DqLyapunovError as e:
        _fail(e)

    field_path = Path(out_path or run.output.get("field", "field.csv"))
    report_path = Path(run.output.get("report") or field_path.with_suffix(".json"))
    dq.export_field_csv(dq.field_frame(field, [ax.points for ax in grid.axes]), field_path)
    dq.export_report_json(report, report_path)

    click.echo(f"{run.problem} {'x'.join(map(str, grid.shape))} via {report['method']}")
    click.echo(f"  relative residual: {report['relative_residual']:.3e}")
    if report.get("max_error") is not None:
        click.echo(f"  max error: {report['max_error']:.3e}")
    if compare:
        click.echo(f"  compare kronecker-gauss vs bartels-stewart: max diff {report['compare_max_diff']:.3e}")
    click.echo(f"Wrote {field_path} and {report_path}")


def _compare(run: RunConfig) -> float:
    """Max field difference between the baseline and Bartels-Stewart."""
    baseline = run.run("kronecker-gauss").field
    bs = run.run("bartels-stewart").field
    diff = float(np.max(np.abs(baseline - bs)))
    tol = dq.get_settings().residual_tol * max(1.0, float(np.max(np.abs(bs))))
    if diff > tol:
        raise dq.DqLyapunovError(f"kronecker-gauss and bartels-stewart differ by {diff:.3e} (tolerance {tol:.1e})")
    return diff


@main.command()
@click.option("--sizes", default=None, callback=_parse_sizes, help="Comma-separated N values.")
@click.option("--methods", default=None, help="Comma-separated method tags (records table).")
@click.option(
    "--problem", default=None, type=click.Choice(PROBLEM_KINDS), help="Problem kind (records table, default poisson)."
)
@click.option("--repetitions", default=None, type=int, help="Timed runs per case, >= 3 (records table).")
@click.option(
    "--table",
    default="ratios",
    show_default=True,
    type=click.Choice(["ratios", "records"]),
    help="ratios compares the fixed Poisson method set; records runs --problem with --methods.",
)
@click.option("--out", "out_path", default=None, type=click.Path(), help="CSV path; JSON and timings go next to it.")
def bench(sizes, methods, problem, repetitions, table, out_path):
    """Cost ratios and instrumented benchmarks."""
    sizes = sizes or DEFAULT_SIZES
    if table == "ratios":
        records_only = {"--methods": methods, "--problem": problem, "--repetitions": repetitions}
        ignored = [flag for flag, value in records_only.items() if value is not None]
        if ignored:
            raise click.UsageError(f"{', '.join(ignored)} only apply to --table records")
        try:
            frame = dq.run_ratio_table(list(sizes))
        except ParameterError as e:
            raise click.UsageError(str(e)) from None
        for row in frame.itertuples(index=False):
            claimed = "" if np.isnan(row.claimed_ratio) else f"  (claimed {row.claimed_ratio:.0%})"
            click.echo(
                f"  N={row.N:<3} model {row.model_ratio:6.1%}  counted {row.counted_ratio:6.1%}"
                f"  centro model {row.centro_model_ratio:6.2%}  centro counted {row.centro_counted_ratio:6.2%}"
                f"{claimed}"
            )
        timings = None
    else:
        problem = problem or "poisson"
        default_methods = TRANSIENT_SCHEMES if problem == "transient" else ("bartels-stewart", "kronecker-gauss")
        try:
            case = dq.BenchCase(
                problem=problem,
                sizes=sizes,
                methods=_parse_list(methods) or default_methods,
                repetitions=repetitions,
            )
        except DqLyapunovError as e:
            raise click.UsageError(str(e)) from None
        records = dq.run_bench(case)
        frame = dq.records_frame(records)
        timings = dq.records_frame(records, timings=True)[["case_id", "wall_time"]]
        click.echo(frame.to_string(index=False))
        failed = [r for r in records if r.error]
        if failed:
            click.echo(f"{len(failed)} of {len(records)} cases failed", err=True)

    if out_path:
        out = Path(out_path)
        dq.export_records_csv(frame, out)
        export_records_json(frame, out.with_suffix(".json"))
        if timings is not None:
            dq.export_report_json(
                {
                    "generated": datetime.now(timezone.utc).isoformat(),
                    "wall_time": dict(zip(timings["case_id"], timings["wall_time"])),
                },
                timings_path(out),
            )
        click.echo(f"Exported {len(frame)} rows to {out}")


@main.command()
@click.option("--problem", default="poisson", show_default=True, type=click.Choice(list(MANUFACTURED)))
@click.option("--sizes", default="7,9,11,13", show_default=True, callback=_parse_sizes, help="Comma-separated N.")
@click.option("--grid", "grid_kind", default=None, type=click.Choice(GRID_KINDS), help="Collocation points.")
@click.option(
    "--config",
    "config_path",
    default=None,
    type=click.Path(dir_okay=False),
    help="Take problem, coefficients and grid kind from a JSON config.",
)
@click.option("--method", default="auto", show_default=True, type=click.Choice(METHOD_TAGS))
@click.option("--out", "out_path", default=None, type=click.Path(), help="CSV path for (N, max_error).")
def convergence(problem, sizes, grid_kind, config_path, method, out_path):
    """Manufactured-solution error sweep over grid sizes."""
    coefficients = {}
    try:
        if config_path:
            run = RunConfig.load(config_path)
            if run.problem not in MANUFACTURED or not run.manufactured:
                raise ConfigError("convergence needs a manufactured-sin source (no exact solution available)")
            problem = run.problem
            coefficients = {k: getattr(run.spec, k) for k in COEFFICIENTS[problem]}
            grid_kind = grid_kind or run.spec.grid.axes[0].kind.value
            if grid_kind not in GRID_KINDS:
                raise ConfigError(f"convergence sweeps need a generated grid, config uses {grid_kind!r}")
        frame = dq.run_convergence(problem, list(sizes), kind=grid_kind, method=method, **coefficients)
    except DqLyapunovError as e:
        _fail(e)

    for row in frame.itertuples(index=False):
        click.echo(f"  N={row.N:<3} max_error={row.max_error:.3e}")
    if out_path:
        dq.export_records_csv(frame, out_path)
        click.echo(f"Exported {len(frame)} rows to {out_path}")


@main.command()
def config():
    """Show current configuration."""
    settings = dq.get_settings()
    for field_name in sorted(settings.__dataclass_fields__):
        click.echo(f"  {field_name}: {getattr(settings, field_name)}")
