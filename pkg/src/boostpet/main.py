"""
boostpet entry point.

Usage:
    boostpet sweep                              Sweep all compared topologies, write CSV + SVG
    boostpet sweep --topology hybrid-sbb --m-min 1 --m-max 7 --step 0.05
    boostpet design --topology hybrid-sbb --m 3 Single design report
    boostpet compare --window 1:2               Topology ranking table
    boostpet calibrate --targets targets.csv    Fit cost/volume coefficients

Exit codes: 0 ok, 1 internal error, 2 config error, 3 infeasible / empty
result, 4 calibration residual above 0.10.
"""

from __future__ import annotations

import functools
import logging
from pathlib import Path
from typing import List, Optional, Tuple

import click
from rich.console import Console

from boostpet import __version__
from boostpet.catalog.loader import DEFAULTS_PATH
from boostpet.catalog.topologies import TOPOLOGY_KINDS
from boostpet.engine.calibration import (
    DEFAULT_MAX_NFEV,
    DEFAULT_SEED,
    DEFAULT_STARTS,
    calibrate as fit_coefficients,
    load_targets,
)
from boostpet.engine.comparison import rank_topologies
from boostpet.engine.design_checks import review
from boostpet.engine.evaluator import baseline_point, baseline_totals, evaluate_design
from boostpet.engine.mmc_sizing import arm_energy_ripple_closed_form
from boostpet.engine.operating_point import check_feasibility
from boostpet.engine.sweep import OBJECTIVES, find_optimum, pareto_front, sweep as run_sweep
from boostpet.errors import (
    ConfigError,
    DomainError,
    EmptySweepError,
    FeasibilityError,
    OutOfRangeError,
)
from boostpet.reports import charts, tables
from boostpet.reports.config import RunConfig, load_run_config
from boostpet.reports.console import design_fields, render_calibration, render_design, render_ranking, render_sweep

log = logging.getLogger("boostpet")

EXIT_INTERNAL = 1
EXIT_CONFIG = 2
EXIT_INFEASIBLE = 3
EXIT_CALIBRATION = 4

SHIPPED_TARGETS = DEFAULTS_PATH.parent / "targets.csv"


def _exit_codes(fn):
    """Turn engine exceptions into the documented exit codes."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except ConfigError as exc:
            for problem in exc.problems:
                click.echo(f"config error: {problem}", err=True)
            raise SystemExit(EXIT_CONFIG)
        except DomainError as exc:
            click.echo(f"invalid input: {exc}", err=True)
            raise SystemExit(EXIT_CONFIG)
        except (FeasibilityError, EmptySweepError, OutOfRangeError) as exc:
            click.echo(f"infeasible: {exc}", err=True)
            raise SystemExit(EXIT_INFEASIBLE)
        except (click.ClickException, click.exceptions.Exit):
            raise
        except Exception as exc:
            log.debug("internal error", exc_info=True)
            click.echo(f"internal error: {exc}", err=True)
            raise SystemExit(EXIT_INTERNAL)

    return wrapper


def _load(ctx, sweep: Optional[dict] = None) -> RunConfig:
    overrides = {
        "output": {"directory": ctx.obj["out"], "formats": ctx.obj["formats"]},
        "sweep": sweep or {},
    }
    return load_run_config(ctx.obj["config"], overrides)


@click.group()
@click.version_option(version=__version__, prog_name="boostpet")
@click.option("--config", "config_path", type=click.Path(path_type=Path), default=None,
              help="TOML config overriding the shipped defaults")
@click.option("--out", default=None, help="Output directory for CSV/SVG files")
@click.option("--formats", default=None, help="Comma-separated output formats: csv,svg")
@click.option("--workers", default=1, show_default=True, help="Threads used to evaluate sweep points")
@click.option("--verbose", is_flag=True, default=False, help="Enable debug logging")
@click.pass_context
def cli(ctx, config_path: Optional[Path], out: Optional[str], formats: Optional[str],
        workers: int, verbose: bool):
    """boostpet - MMC-based PET design-space exploration under boost-AC operation."""
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(asctime)s [%(name)s] %(levelname)s: %(message)s",
        datefmt="%H:%M:%S",
    )
    ctx.ensure_object(dict)
    ctx.obj["config"] = config_path
    ctx.obj["out"] = out
    ctx.obj["formats"] = formats
    ctx.obj["workers"] = max(1, workers)


@cli.command()
@click.option("--topology", "topologies", multiple=True, type=click.Choice(TOPOLOGY_KINDS),
              help="Topology to sweep (repeatable); default from config")
@click.option("--m-min", type=float, default=None, help="First grid point")
@click.option("--m-max", type=float, default=None, help="Last grid point (inclusive)")
@click.option("--step", type=float, default=None, help="Grid step")
@click.option("--pareto", is_flag=True, default=False, help="Also write pareto.csv")
@click.pass_context
@_exit_codes
def sweep(ctx, topologies: Tuple[str, ...], m_min: Optional[float], m_max: Optional[float],
          step: Optional[float], pareto: bool):
    """Sweep the modulation index and write per-topology CSVs and charts."""
    cfg = _load(ctx, {
        "m_lo": m_min,
        "m_hi": m_max,
        "step": step,
        "topologies": list(topologies) or None,
    })
    s = cfg.sweep
    baseline = baseline_totals(cfg.system, cfg.catalog, cfg.coefficients)
    results = [
        run_sweep(cfg.system, cfg.catalog.topology(kind), cfg.catalog, cfg.coefficients,
                  s.m_lo, s.m_hi, s.step, workers=ctx.obj["workers"], baseline=baseline)
        for kind in s.topologies
    ]
    if all(r.empty for r in results):
        raise EmptySweepError(
            f"no feasible point for {', '.join(s.topologies)} in {s.m_lo:g}..{s.m_hi:g}"
        )

    out_dir = cfg.output.directory
    artifacts: List[Path] = []
    if "csv" in cfg.output.formats:
        artifacts.extend(tables.write_sweep_csv(r, out_dir) for r in results)
        artifacts.append(tables.write_infeasible_csv(results, out_dir))
        if pareto:
            artifacts.append(tables.write_pareto_csv(pareto_front(results), out_dir))
    if "svg" in cfg.output.formats:
        artifacts.extend(charts.write_charts(results, out_dir))
    if artifacts:
        tables.write_manifest(out_dir, "sweep", cfg.config_hash,
                              f"{s.m_lo:g}:{s.m_hi:g}:{s.step:g}", artifacts)

    optima = [
        (r.topology, objective, *find_optimum(r, objective))
        for r in results if not r.empty
        for objective in OBJECTIVES
    ]
    render_sweep(Console(), results, optima)
    click.echo(f"Wrote {len(artifacts)} files to {out_dir}")


@cli.command()
@click.option("--topology", required=True, type=click.Choice(TOPOLOGY_KINDS))
@click.option("--m", "m", required=True, type=float, help="Modulation index")
@click.option("--kv", is_flag=True, default=False, help="Flat key=value output for scripting")
@click.pass_context
@_exit_codes
def design(ctx, topology: str, m: float, kv: bool):
    """Evaluate a single design point against the m = 1 baseline."""
    cfg = _load(ctx)
    topo = cfg.catalog.topology(topology)
    violation = check_feasibility(topo, m)
    if violation is not None:
        raise FeasibilityError(violation)

    ev = evaluate_design(cfg.system, topo, m, cfg.catalog, cfg.coefficients)
    baseline_units = baseline_point(cfg.system, cfg.catalog).dcdc.unit_count

    if kv:
        for key, value in design_fields(ev, baseline_units):
            click.echo(f"{key}={value}")
        return

    render_design(Console(), ev, baseline_units, review(ev), arm_energy_ripple_closed_form(ev.op))


def _parse_window(text: str) -> Tuple[float, float]:
    try:
        lo, hi = (float(part) for part in text.split(":"))
    except ValueError:
        raise click.BadParameter("expected LO:HI, e.g. 1:2", param_hint="--window") from None
    if hi < lo:
        raise click.BadParameter("HI must be >= LO", param_hint="--window")
    return lo, hi


@cli.command()
@click.option("--window", default="1:2", show_default=True, help="Modulation-index window LO:HI (inclusive)")
@click.option("--step", type=float, default=None, help="Grid step inside the window")
@click.pass_context
@_exit_codes
def compare(ctx, window: str, step: Optional[float]):
    """Rank the hybrid, SBB hybrid and full-bridge MMCs over a window."""
    cfg = _load(ctx)
    ranking = rank_topologies(
        cfg.system, cfg.catalog, cfg.coefficients,
        m_window=_parse_window(window),
        step=step or cfg.sweep.step,
        workers=ctx.obj["workers"],
    )
    render_ranking(Console(), ranking)


@cli.command()
@click.option("--targets", "targets_path", type=click.Path(path_type=Path), default=None,
              help="Targets CSV (m,metric,target[,topology]); default: shipped targets")
@click.option("--starts", default=DEFAULT_STARTS, show_default=True, help="Multi-start count")
@click.option("--seed", default=DEFAULT_SEED, show_default=True, help="Seed for start perturbations")
@click.option("--max-nfev", default=DEFAULT_MAX_NFEV, show_default=True,
              help="Function evaluation budget per start")
@click.pass_context
@_exit_codes
def calibrate(ctx, targets_path: Optional[Path], starts: int, seed: int, max_nfev: int):
    """Fit cost/volume coefficients to design-point ratio targets."""
    cfg = _load(ctx)
    targets = load_targets(targets_path or SHIPPED_TARGETS)
    result = fit_coefficients(
        cfg.system, cfg.catalog, targets,
        initial=cfg.coefficients, starts=starts, max_nfev=max_nfev, seed=seed,
    )

    out_dir = cfg.output.directory
    artifacts = [
        tables.write_coefficients(result.coefficients, out_dir),
        tables.write_residuals_csv(result.residuals, out_dir),
    ]
    grid = ",".join(sorted({f"{t.m:g}" for t in targets}, key=float))
    tables.write_manifest(out_dir, "calibrate", cfg.config_hash, grid, artifacts)

    render_calibration(Console(), result)
    if not result.acceptable:
        click.echo(f"max residual {result.max_residual:.4f} exceeds 0.10", err=True)
        raise SystemExit(EXIT_CALIBRATION)


if __name__ == "__main__":
    cli()
