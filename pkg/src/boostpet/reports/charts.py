"""
SVG line charts of sweep results: total volume, total cost and MMC losses
against modulation index, one line per topology.
"""

from __future__ import annotations

import logging
from pathlib import Path
from typing import Callable, List, Sequence

import matplotlib
from matplotlib.figure import Figure

from boostpet.engine.evaluator import DesignEvaluation
from boostpet.engine.sweep import SweepResult

log = logging.getLogger(__name__)

# fixed element ids; glyphs as paths so the file needs no fonts
_SVG_RC = {"svg.hashsalt": "boostpet", "svg.fonttype": "path"}

_STYLE = {
    "hybrid-traditional": dict(color="#1f77b4", marker="o"),
    "hybrid-sbb": dict(color="#d62728", marker="s"),
    "full-bridge": dict(color="#2ca02c", marker="^"),
    "half-bridge": dict(color="#7f7f7f", marker="d"),
}

CHARTS = (
    ("fig5_volume.svg", "Total volume of power electronic transformer", "Volume / baseline",
     lambda e: e.normalized.total_volume_ratio),
    ("fig6_cost.svg", "Total cost of power electronic transformer", "Cost / baseline",
     lambda e: e.normalized.total_cost_ratio),
    ("fig7_losses.svg", "Power losses of MMCs", "MMC loss (kW)",
     lambda e: e.losses.mmc_total / 1e3),
)


def line_chart(
    results: Sequence[SweepResult],
    value: Callable[[DesignEvaluation], float],
    title: str,
    ylabel: str,
    path: Path,
) -> Path:
    with matplotlib.rc_context(_SVG_RC):
        fig = Figure(figsize=(6.4, 4.2))
        _draw(fig, results, value, title, ylabel)
        path.parent.mkdir(parents=True, exist_ok=True)
        fig.savefig(path, format="svg", metadata={"Date": None})
    log.debug("wrote %s", path)
    return path


def _draw(fig, results, value, title, ylabel):
    ax = fig.add_subplot(1, 1, 1)
    for result in results:
        if result.empty:
            continue
        xs = [e.m for e in result.evaluations]
        ys = [value(e) for e in result.evaluations]
        style = _STYLE.get(result.topology, {})
        ax.plot(xs, ys, label=result.topology, linewidth=1.5, markersize=3,
                markevery=max(1, len(xs) // 12), **style)

    ax.set_title(title)
    ax.set_xlabel("Modulation index m")
    ax.set_ylabel(ylabel)
    ax.grid(True, linewidth=0.4, alpha=0.6)
    ax.legend(frameon=False)
    fig.tight_layout()


def write_charts(results: Sequence[SweepResult], directory: Path) -> List[Path]:
    return [
        line_chart(results, value, title, ylabel, directory / name)
        for name, title, ylabel, value in CHARTS
    ]
