"""
Command-line interface for alpharm.

Usage:
    alpharm kernel --alpha 2 --r 0:0.9:10            # kernel mean table
    alpharm eval --solution f.json --grid 16x32      # values on a polar grid
    alpharm verify --solution f.json                 # full check suite, JSON lines
    alpharm verify --boundary b.csv --alpha 1 --format csv
    alpharm eval --boundary b.csv --alpha 0 --dump f.json --trace t.csv
    alpharm bounds --alpha 0 --r 0:0.9:10            # bound curves
    alpharm landau --alpha 0 --p 1 --norm 1 --lambda 1
    alpharm landau --beta-mode --solution f.json
    alpharm scan --alpha-grid -0.9:0:4 --p-list 1,2,inf

Exit codes: 0 success, 1 input/IO error, 2 domain or usage error, 3 violated check.
"""

import functools
import math
from pathlib import Path
from typing import Callable, List, Literal, Optional, Tuple

import click
import numpy as np
from loguru import logger
from pydantic import BaseModel, Field, ValidationError, model_validator

from . import __version__
from .bounds import bound_curves
from .codecs import (
    dump_solution,
    load_boundary,
    load_solution,
    render,
    to_json,
    write_boundary,
    write_csv,
    write_json_lines,
    write_reports_csv,
)
from .config import LOG_LEVELS, AlphaHarmonicSettings, get_settings
from .exceptions import ConvergenceError, DomainError, InputFormatError, VerificationFailure
from .kernel import kernel_mean, kernel_mean_slope
from .landau import classical_landau_radius, landau_bounded, landau_hardy, landau_sweep
from .logging_config import configure_logging
from .solution import SeriesSolution, boundary_trace, evaluate_polar, from_boundary, truncate_order
from .verification import verify_solution

EXIT_IO = 1
EXIT_DOMAIN = 2
EXIT_VIOLATION = 3

KERNEL_COLUMNS = ["r", "M_alpha_closed", "M_alpha_quad", "slope"]
EVAL_COLUMNS = ["r", "theta", "re", "im", "abs"]
BOUND_COLUMNS = [
    "r",
    "center_deviation",
    "gradient_tight",
    "gradient_loose",
    "increment",
    "growth",
    "growth_tight",
    "heinz_arctan",
    "colonna",
]
SCAN_COLUMNS = ["alpha", "p", "gamma0", "mstar", "rho0", "r0_lower", "univalence_radius", "covering_radius"]
EVAL_MAX_RADIUS = 0.99

Command = Literal["eval", "kernel", "verify", "bounds", "landau", "scan"]


class RunConfig(BaseModel):
    """Validated knobs of one CLI invocation"""
    command: Command
    alpha: Optional[float] = None
    solution: Optional[Path] = None
    boundary: Optional[Path] = None
    out: Optional[Path] = None
    quad_n: int = Field(256, ge=16)
    grid_radial: int = Field(64, ge=16)
    grid_angular: int = Field(128, ge=16)
    tol: float = Field(1e-6, gt=0)
    order: Optional[int] = Field(default=None, ge=1)
    beta_mode: bool = False

    @model_validator(mode="after")
    def _check_inputs(self) -> "RunConfig":
        needs_input = self.command in ("eval", "verify") or (self.command == "landau" and self.beta_mode)
        if needs_input and (self.solution is None) == (self.boundary is None):
            raise ValueError(f"{self.command} needs exactly one of --solution or --boundary")
        if self.command in ("kernel", "bounds") and self.alpha is None:
            raise ValueError(f"{self.command} needs --alpha")
        if self.alpha is not None and not (self.alpha > -1):
            raise ValueError(f"alpha must exceed -1, got {self.alpha}")
        return self

    def settings(self) -> AlphaHarmonicSettings:
        return get_settings().model_copy(
            update={
                "grid_radial": self.grid_radial,
                "grid_angular": self.grid_angular,
                "bound_tolerance": self.tol,
            }
        )


def _fail(message: str, code: int) -> None:
    click.echo(message, err=True)
    raise SystemExit(code)


def guarded(func: Callable) -> Callable:
    """Map alpharm errors to exit codes"""

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except InputFormatError as e:
            _fail(f"❌ input error: {e}", EXIT_IO)
        except OSError as e:
            _fail(f"❌ io error: {e}", EXIT_IO)
        except VerificationFailure as e:
            _fail(f"❌ {e}", EXIT_VIOLATION)
        except (DomainError, ConvergenceError) as e:
            _fail(f"❌ domain error: {e}", EXIT_DOMAIN)
        except ValidationError as e:
            _fail(f"❌ invalid arguments: {e.errors()[0]['msg']}", EXIT_DOMAIN)

    return wrapper


def parse_grid_spec(value: str) -> np.ndarray:
    """A single number or a linspace spec a:b:n"""
    parts = value.split(":")
    try:
        if len(parts) == 1:
            return np.array([float(parts[0])])
        if len(parts) == 3:
            count = int(parts[2])
            if count < 1:
                raise ValueError("count must be positive")
            return np.linspace(float(parts[0]), float(parts[1]), count)
    except ValueError as e:
        raise click.BadParameter(f"{value!r}: {e}")
    raise click.BadParameter(f"{value!r} is neither a number nor a:b:n")


def parse_exponent(value: str) -> float:
    try:
        return math.inf if value.strip().lower() in ("inf", "infinity") else float(value)
    except ValueError:
        raise click.BadParameter(f"{value!r} is not a number or 'inf'")


def parse_shape(value: str) -> Tuple[int, int]:
    try:
        radial, angular = (int(v) for v in value.lower().split("x"))
    except ValueError:
        raise click.BadParameter(f"{value!r} is not of the form <int>x<int>")
    return radial, angular


def _emit(text: str, out: Optional[Path]) -> None:
    if out is None:
        click.echo(text, nl=False)
    else:
        Path(out).write_text(text, encoding="utf-8", newline="\n")
        logger.info(f"✅ wrote {out}")


def _load_input(config: RunConfig, settings: AlphaHarmonicSettings) -> SeriesSolution:
    if config.solution is not None:
        sol = load_solution(config.solution)
        if config.alpha is not None and config.alpha != sol.alpha:
            raise DomainError(f"--alpha {config.alpha} contradicts the document's alpha {sol.alpha}", "alpha")
        return sol
    if config.alpha is None:
        raise DomainError("--boundary input needs --alpha", "alpha")
    data = load_boundary(config.boundary)
    order = truncate_order(config.order or settings.truncation_order, data)
    if order < 1:
        raise DomainError(f"{data.n} samples cannot resolve any mode", "boundary")
    return from_boundary(config.alpha, data, order)


def _config(command: str, **kwargs) -> RunConfig:
    """RunConfig from flags, unset knobs taken from the environment settings"""
    defaults = get_settings()
    grid = kwargs.pop("grid", None)
    if grid is not None:
        kwargs["grid_radial"], kwargs["grid_angular"] = grid
    values = {
        "quad_n": defaults.quad_n,
        "grid_radial": defaults.grid_radial,
        "grid_angular": defaults.grid_angular,
        "tol": defaults.bound_tolerance,
    }
    values.update({k: v for k, v in kwargs.items() if v is not None})
    return RunConfig(command=command, **values)


alpha_option = click.option("--alpha", type=float, default=None, help="Exponent alpha > -1")
out_option = click.option("--out", type=click.Path(dir_okay=False, path_type=Path), default=None, help="Output file (default stdout)")
solution_option = click.option("--solution", type=click.Path(dir_okay=False, path_type=Path), default=None, help="Solution JSON document")
boundary_option = click.option("--boundary", type=click.Path(dir_okay=False, path_type=Path), default=None, help="Boundary CSV (theta,re,im)")
order_option = click.option("--order", type=int, default=None, help="Truncation order for boundary input (default 64)")
grid_option = click.option("--grid", callback=lambda ctx, param, v: parse_shape(v) if v else None, default=None, help="Polar grid <radial>x<angular> (default 64x128)")
r_option = click.option("--r", "r_spec", default="0:0.9:10", show_default=True, help="Radius or grid a:b:n")


@click.group()
@click.version_option(version=__version__, prog_name="alpharm")
@click.option(
    "--log-level",
    type=click.Choice(LOG_LEVELS, case_sensitive=False),
    default=None,
    help="Log level (default ALPHARM_LOG_LEVEL or WARNING)",
)
@click.option("--log-format", type=click.Choice(["text", "json"]), default=None, help="Log record format")
def cli(log_level: Optional[str], log_format: Optional[str]):
    """
    Alpha-harmonic functions on the unit disk: kernels, solutions, bounds, univalence radii.
    """
    try:
        settings = get_settings()
    except ValidationError as e:
        _fail(f"❌ invalid ALPHARM_ settings: {e.errors()[0]['loc'][0]}: {e.errors()[0]['msg']}", EXIT_DOMAIN)
    configure_logging(log_level or settings.log_level, log_format or settings.log_format)


@cli.command("kernel")
@alpha_option
@r_option
@click.option("--quad-n", type=int, default=None, help="Starting trapezoid node count (default 256)")
@out_option
@guarded
def cmd_kernel(alpha: Optional[float], r_spec: str, quad_n: Optional[int], out: Optional[Path]):
    """Kernel mean M_alpha(r): closed form, quadrature and radial slope."""
    config = _config("kernel", alpha=alpha, quad_n=quad_n, out=out)
    radii = parse_grid_spec(r_spec)
    closed = np.atleast_1d(kernel_mean(config.alpha, radii))
    quad = np.atleast_1d(kernel_mean(config.alpha, radii, method="quadrature", n=config.quad_n))
    slope = np.atleast_1d(kernel_mean_slope(config.alpha, radii))
    rows = [
        {"r": float(r), "M_alpha_closed": float(c), "M_alpha_quad": float(q), "slope": float(s)}
        for r, c, q, s in zip(radii, closed, quad, slope)
    ]
    _emit(render(write_csv, rows, KERNEL_COLUMNS), config.out)


@cli.command("eval")
@alpha_option
@solution_option
@boundary_option
@order_option
@grid_option
@out_option
@click.option("--dump", type=click.Path(dir_okay=False, path_type=Path), default=None, help="Also write the evaluated solution as a JSON document")
@click.option("--trace", type=click.Path(dir_okay=False, path_type=Path), default=None, help="Also write the boundary trace as a theta,re,im CSV")
@guarded
def cmd_eval(alpha, solution, boundary, order, grid, out, dump, trace):
    """Solution values on a polar grid of radii in [0, 0.99]."""
    config = _config("eval", alpha=alpha, solution=solution, boundary=boundary, order=order, grid=grid, out=out)
    settings = config.settings()
    sol = _load_input(config, settings)
    radii = np.linspace(0.0, EVAL_MAX_RADIUS, config.grid_radial)
    angles = 2.0 * np.pi * np.arange(config.grid_angular) / config.grid_angular
    values = evaluate_polar(sol, radii, angles)
    rows = []
    for i, r in enumerate(radii):
        for j, theta in enumerate(angles):
            v = values[i, j]
            rows.append({"r": float(r), "theta": float(theta), "re": float(v.real), "im": float(v.imag), "abs": float(abs(v))})
    _emit(render(write_csv, rows, EVAL_COLUMNS), config.out)
    if dump is not None:
        dump_solution(sol, dump)
        logger.info(f"✅ wrote {dump}")
    if trace is not None:
        samples = boundary_trace(sol, max(config.grid_angular, 2 * sol.order + 1))
        Path(trace).write_text(render(write_boundary, samples), encoding="utf-8", newline="\n")
        logger.info(f"✅ wrote {trace}")


@cli.command("verify")
@alpha_option
@solution_option
@boundary_option
@order_option
@grid_option
@click.option("--tol", type=float, default=None, help="Bound tolerance relative to M (default 1e-6)")
@click.option("--bound", type=float, default=None, help="Known bound M on |f|; the measured sup is used when larger")
@click.option("--quad-n", type=int, default=None, help="Angular nodes for Hardy means (default 512)")
@click.option(
    "--format", "fmt", type=click.Choice(["jsonl", "csv"]), default="jsonl", show_default=True, help="Report encoding"
)
@out_option
@guarded
def cmd_verify(alpha, solution, boundary, order, grid, tol, bound, quad_n, fmt, out):
    """Run every check against a solution; JSON-lines or CSV reports, exit 3 on any violation."""
    config = _config(
        "verify", alpha=alpha, solution=solution, boundary=boundary, order=order, grid=grid, tol=tol, quad_n=quad_n, out=out
    )
    settings = config.settings()
    if quad_n is not None:
        settings = settings.model_copy(update={"hardy_angles": config.quad_n})
    sol = _load_input(config, settings)
    reports = verify_solution(sol, bound, settings)
    writer = write_reports_csv if fmt == "csv" else write_json_lines
    _emit(render(writer, reports), config.out)
    failed = [report for report in reports if not report.satisfied]
    if failed:
        raise VerificationFailure(f"{len(failed)} of {len(reports)} checks violated, first: {failed[0].label}", len(failed))
    click.echo(f"✅ {len(reports)} checks satisfied", err=True)


@cli.command("bounds")
@alpha_option
@r_option
@click.option("--bound", type=float, default=1.0, show_default=True, help="Bound M on |f|")
@click.option("--p", "p_spec", default="2", show_default=True, help="Hardy exponent (number or inf)")
@click.option("--norm", type=float, default=1.0, show_default=True, help="Hardy norm ||f||_p")
@out_option
@guarded
def cmd_bounds(alpha, r_spec, bound, p_spec, norm, out):
    """Plot-ready curves of every bound over a radius grid."""
    config = _config("bounds", alpha=alpha, out=out)
    rows = bound_curves(config.alpha, bound, parse_exponent(p_spec), norm, parse_grid_spec(r_spec))
    _emit(render(write_csv, rows, BOUND_COLUMNS), config.out)


@cli.command("landau")
@alpha_option
@click.option("--p", "p_spec", default="1", show_default=True, help="Hardy exponent (number or inf)")
@click.option("--norm", type=float, default=1.0, show_default=True, help="Hardy norm ||f||_p")
@click.option("--lambda", "lam", type=float, default=1.0, show_default=True, help="Jacobian modulus |J_f(0)|")
@click.option("--beta-mode", is_flag=True, help="Measure beta and M from --solution/--boundary instead")
@solution_option
@boundary_option
@order_option
@grid_option
@out_option
@guarded
def cmd_landau(alpha, p_spec, norm, lam, beta_mode, solution, boundary, order, grid, out):
    """Univalence and covering radii (LandauResult JSON)."""
    if beta_mode:
        config = _config(
            "landau", alpha=alpha, solution=solution, boundary=boundary, order=order, grid=grid, out=out, beta_mode=True
        )
        settings = config.settings()
        sol = _load_input(config, settings)
        result = landau_bounded(sol, settings.grid_radial, settings.grid_angular, settings.trace_samples)
        if result.mstar >= 1:
            rho, cover = classical_landau_radius(result.mstar)
            logger.info(f"classical analytic reference: rho={rho!r} covering={cover!r}")
    else:
        if alpha is None:
            raise DomainError("landau needs --alpha", "alpha")
        config = _config("landau", alpha=alpha, out=out)
        result = landau_hardy(config.alpha, parse_exponent(p_spec), norm, lam)
    _emit(to_json(result) + "\n", config.out)


@cli.command("scan")
@click.option("--alpha-grid", default="-0.9:0:4", show_default=True, help="Alpha grid a:b:n inside (-1, 0]")
@click.option("--p-list", default="1,2,inf", show_default=True, help="Comma-separated Hardy exponents")
@click.option("--norm", type=float, default=1.0, show_default=True, help="Hardy norm ||f||_p")
@click.option("--lambda", "lam", type=float, default=1.0, show_default=True, help="Jacobian modulus |J_f(0)|")
@out_option
@guarded
def cmd_scan(alpha_grid, p_list, norm, lam, out):
    """landau sweep over an alpha grid and a list of exponents (CSV)."""
    config = _config("scan", out=out)
    alphas = parse_grid_spec(alpha_grid)
    ps: List[float] = [parse_exponent(p) for p in p_list.split(",") if p.strip()]
    rows = []
    for alpha, p, result in landau_sweep([float(a) for a in alphas], ps, norm, lam):
        rows.append({"alpha": float(alpha), "p": float(p), **result.model_dump()})
    _emit(render(write_csv, rows, SCAN_COLUMNS), config.out)


def main() -> None:
    cli()


if __name__ == "__main__":
    main()
