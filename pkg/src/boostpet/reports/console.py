"""Terminal rendering with Rich, plus a flat key=value mode for scripts."""

from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence, Tuple

from rich.console import Console
from rich.table import Table

from boostpet.engine.calibration import CalibrationResult
from boostpet.engine.comparison import RankingTable
from boostpet.engine.design_checks import DesignWarning
from boostpet.engine.evaluator import DesignEvaluation
from boostpet.engine.sweep import SweepResult

_SEVERITY_COLORS = {"critical": "red", "warning": "yellow", "info": "dim"}


def _color_for_ratio(value: float) -> str:
    """Green when the design beats the baseline, red when it is worse."""
    if value < 0.97:
        return "green"
    elif value <= 1.03:
        return "white"
    return "red"


def unit_fraction(units: int, baseline_units: int) -> str:
    return str(Fraction(units, baseline_units)) if baseline_units else "n/a"


def design_fields(ev: DesignEvaluation, baseline_units: int) -> List[Tuple[str, str]]:
    """Every DesignEvaluation figure as (key, value) text pairs."""
    pairs = [
        ("topology", ev.topology),
        ("m", f"{ev.m:g}"),
        ("u_dc_v", f"{ev.op.u_dc:.6g}"),
        ("i_dc_a", f"{ev.op.i_dc:.6g}"),
        ("n_sm", str(ev.mmc.n_total)),
        ("n_half", str(ev.mmc.n_half)),
        ("n_full", str(ev.mmc.n_full)),
        ("hybridization_ratio", f"{ev.mmc.hybridization_ratio:.6g}"),
        ("arm_energy_ripple_j", f"{ev.mmc.arm_energy_ripple:.6g}"),
        ("c_sm_f", f"{ev.mmc.sm_capacitance:.6g}"),
        ("total_capacitance_f", f"{ev.mmc.total_capacitance:.6g}"),
        ("mmc_device", ev.mmc.device.name),
        ("mmc_igbt", str(ev.mmc.igbt_count_total)),
        ("n_dc_units", str(ev.dcdc.unit_count)),
        ("baseline_dc_units", str(baseline_units)),
        ("dc_unit_fraction", unit_fraction(ev.dcdc.unit_count, baseline_units)),
        ("dcdc_device", ev.dcdc.device.name),
        ("dcdc_igbt", str(ev.dcdc.igbt_count_total)),
        ("per_unit_power_w", f"{ev.dcdc.per_unit_power:.6g}"),
        ("mmc_cost", f"{ev.mmc_cost:.6g}"),
        ("mmc_volume_l", f"{ev.mmc_volume:.6g}"),
        ("dcdc_cost", f"{ev.dcdc_cost:.6g}"),
        ("dcdc_volume_l", f"{ev.dcdc_volume:.6g}"),
        ("total_cost", f"{ev.total_cost:.6g}"),
        ("total_volume_l", f"{ev.total_volume:.6g}"),
        ("loss_mmc_conduction_w", f"{ev.losses.mmc_conduction:.6g}"),
        ("loss_mmc_switching_w", f"{ev.losses.mmc_switching:.6g}"),
        ("loss_mmc_branch_w", f"{ev.losses.mmc_branch:.6g}"),
        ("loss_dcdc_conduction_w", f"{ev.losses.dcdc_conduction:.6g}"),
        ("loss_dcdc_switching_w", f"{ev.losses.dcdc_switching:.6g}"),
        ("loss_total_w", f"{ev.losses.total:.6g}"),
        ("efficiency", f"{ev.losses.efficiency:.6g}"),
    ]
    pairs.extend((k, f"{v:.6g}") for k, v in ev.normalized.as_dict().items())
    return pairs


def summary_lines(ev: DesignEvaluation, baseline_units: int) -> List[str]:
    n = ev.normalized
    return [
        f"U_dc = {ev.op.u_dc / 1e3:g} kV, m = {ev.m:g}",
        f"DC/DC units reduced to {unit_fraction(ev.dcdc.unit_count, baseline_units)} "
        f"({ev.dcdc.unit_count} vs {baseline_units} at the baseline)",
        f"DC/DC stage: volume {n.dcdc_volume_ratio:.0%}, cost {n.dcdc_cost_ratio:.0%} of baseline",
        f"MMC stage: volume x{n.mmc_volume_ratio:.2f}, cost x{n.mmc_cost_ratio:.2f} of baseline",
        f"Total: volume {n.total_volume_ratio:.0%}, cost {n.total_cost_ratio:.0%} of baseline",
    ]


def render_design(
    console: Console,
    ev: DesignEvaluation,
    baseline_units: int,
    warnings: Sequence[DesignWarning],
    oracle_ripple: float,
) -> None:
    console.print(f"\n[bold]{ev.topology}[/bold] at m = {ev.m:g}\n")
    for line in summary_lines(ev, baseline_units):
        console.print(f"  {line}")

    table = Table(show_header=True, header_style="bold")
    table.add_column("Quantity")
    table.add_column("Value", justify="right")
    ratio_keys = set(ev.normalized.as_dict())
    for key, value in design_fields(ev, baseline_units):
        if key in ratio_keys:
            color = _color_for_ratio(float(value))
            value = f"[{color}]{value}[/{color}]"
        table.add_row(key, value)
    console.print(table)

    console.print(
        f"[dim]Arm energy ripple cross-check: numeric {ev.mmc.arm_energy_ripple:.1f} J, "
        f"closed form {oracle_ripple:.1f} J[/dim]"
    )

    if warnings:
        console.print("\n[bold]Design notes:[/bold]")
        for w in warnings:
            color = _SEVERITY_COLORS.get(w.severity, "white")
            console.print(f"  [{color}]{w.severity.upper()}[/{color}]  {w.title}")
            console.print(f"           [dim]{w.detail}[/dim]")
    console.print()


def render_ranking(console: Console, ranking: RankingTable) -> None:
    lo, hi = ranking.window
    console.print(f"\n[bold]Topology ranking[/bold] over m in [{lo:g}, {hi:g}]")
    if ranking.common_points:
        console.print(f"[dim]{len(ranking.common_points)} common feasible points[/dim]")

    kinds = [s.kind for s in ranking.scores]
    table = Table(show_header=True, header_style="bold")
    table.add_column("Criterion")
    for kind in kinds:
        table.add_column(kind, justify="center")

    for r in ranking.rankings:
        cells = []
        for kind in kinds:
            rank = r.rank_of(kind)
            if rank is None:
                cells.append("[dim]-[/dim]")
            elif rank == 1:
                cells.append("[bold green]1[/bold green]")
            else:
                cells.append(str(rank))
        table.add_row(r.label, *cells)
    console.print(table)

    detail = Table(show_header=True, header_style="bold")
    detail.add_column("Topology")
    detail.add_column("m range", justify="right")
    detail.add_column("Points", justify="right")
    detail.add_column("Power density (kW/L)", justify="right")
    detail.add_column("Efficiency", justify="right")
    detail.add_column("Cost", justify="right")
    for s in ranking.scores:
        detail.add_row(
            s.kind,
            f"{s.modulation_range:g}",
            str(s.points),
            f"{s.mean_power_density / 1e3:.3f}" if s.mean_power_density is not None else "-",
            f"{s.mean_efficiency:.4%}" if s.mean_efficiency is not None else "-",
            f"{s.mean_cost:.1f}" if s.mean_cost is not None else "-",
        )
    console.print(detail)

    for note in ranking.notes:
        console.print(f"  [yellow]FLAG[/yellow]  {note}")
    console.print(f"\n{ranking.summary}\n")


def render_sweep(console: Console, results: Sequence[SweepResult], optima: Sequence[Tuple[str, str, float, float]]) -> None:
    table = Table(show_header=True, header_style="bold")
    table.add_column("Topology")
    table.add_column("Feasible", justify="right")
    table.add_column("Infeasible", justify="right")
    for r in results:
        table.add_row(r.topology, str(len(r.evaluations)), str(len(r.infeasible)))
    console.print(table)

    if optima:
        best = Table(show_header=True, header_style="bold")
        best.add_column("Topology")
        best.add_column("Objective")
        best.add_column("m*", justify="right")
        best.add_column("Value", justify="right")
        for kind, objective, m, value in optima:
            best.add_row(kind, objective, f"{m:g}", f"{value:.6g}")
        console.print(best)


def render_calibration(console: Console, result: CalibrationResult) -> None:
    table = Table(show_header=True, header_style="bold")
    table.add_column("m", justify="right")
    table.add_column("Metric")
    table.add_column("Target", justify="right")
    table.add_column("Model", justify="right")
    table.add_column("Residual", justify="right")
    for row in result.residuals:
        color = "green" if abs(row.residual) <= 0.05 else ("yellow" if abs(row.residual) <= 0.10 else "red")
        table.add_row(
            f"{row.m:g}", row.metric, f"{row.target:.3f}", f"{row.model:.3f}",
            f"[{color}]{row.residual:+.3f}[/{color}]",
        )
    console.print(table)

    status = "[green]converged[/green]" if result.converged else "[yellow]not converged[/yellow]"
    console.print(
        f"Fit {status}, best start {result.best_start}, "
        f"max |residual| {result.max_residual:.4f}, sum of squares {result.sum_of_squares:.6g}"
    )
    if result.ill_conditioned:
        console.print("[yellow]All targets share one modulation index; coefficients are poorly determined.[/yellow]")
