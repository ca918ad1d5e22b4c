"""
CSV and TOML artifacts. Numbers carry 6 significant digits and files use
"\n" line endings so repeated runs are byte-identical.
"""

from __future__ import annotations

import logging
from pathlib import Path
from typing import Iterable, List, Sequence

import pandas as pd
import toml

from boostpet.engine.calibration import ResidualRow
from boostpet.engine.evaluator import CostVolumeCoefficients
from boostpet.engine.sweep import ParetoPoint, SweepResult

log = logging.getLogger(__name__)

FLOAT_FORMAT = "%.6g"

SWEEP_COLUMNS = [
    "topology", "m", "u_dc_v", "n_dc_units", "n_sm", "n_half", "n_full", "c_sm_f",
    "mmc_igbt", "dcdc_igbt", "mmc_cost_ratio", "mmc_volume_ratio", "dcdc_cost_ratio",
    "dcdc_volume_ratio", "total_cost_ratio", "total_volume_ratio", "loss_total_w", "efficiency",
]

MANIFEST_NAME = "run_manifest.csv"


def _write(frame: pd.DataFrame, path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    log.debug("wrote %s (%d rows)", path, len(frame))
    return path


def sweep_frame(result: SweepResult) -> pd.DataFrame:
    rows = []
    for e in result.evaluations:
        row = {
            "topology": e.topology,
            "m": e.m,
            "u_dc_v": e.op.u_dc,
            "n_dc_units": e.dcdc.unit_count,
            "n_sm": e.mmc.n_total,
            "n_half": e.mmc.n_half,
            "n_full": e.mmc.n_full,
            "c_sm_f": e.mmc.sm_capacitance,
            "mmc_igbt": e.mmc.igbt_count_total,
            "dcdc_igbt": e.dcdc.igbt_count_total,
            "loss_total_w": e.losses.total,
            "efficiency": e.losses.efficiency,
        }
        row.update(e.normalized.as_dict())
        rows.append(row)
    return pd.DataFrame(rows, columns=SWEEP_COLUMNS)


def write_sweep_csv(result: SweepResult, directory: Path) -> Path:
    return _write(sweep_frame(result), directory / f"sweep_{result.topology}.csv")


def write_infeasible_csv(results: Sequence[SweepResult], directory: Path) -> Path:
    rows = [
        {"topology": r.topology, "m": p.m, "reason": p.reason}
        for r in results
        for p in r.infeasible
    ]
    return _write(pd.DataFrame(rows, columns=["topology", "m", "reason"]), directory / "infeasible.csv")


def write_pareto_csv(points: Sequence[ParetoPoint], directory: Path) -> Path:
    frame = pd.DataFrame(
        [(p.topology, p.m, p.total_cost, p.total_volume, p.total_loss) for p in points],
        columns=["topology", "m", "total_cost", "total_volume", "loss_total_w"],
    )
    return _write(frame, directory / "pareto.csv")


def write_residuals_csv(rows: Sequence[ResidualRow], directory: Path) -> Path:
    frame = pd.DataFrame(
        [(r.m, r.metric, r.target, r.model, r.residual) for r in rows],
        columns=["m", "metric", "target", "model", "residual"],
    )
    return _write(frame, directory / "residuals.csv")


def write_coefficients(coeffs: CostVolumeCoefficients, directory: Path) -> Path:
    """Write a [coefficients] section that can be pasted into (or used as) a config."""
    path = directory / "coefficients.toml"
    path.parent.mkdir(parents=True, exist_ok=True)
    rounded = {k: float(f"{v:.6g}") for k, v in coeffs.as_dict().items()}
    with open(path, "w", newline="\n") as fh:
        toml.dump({"coefficients": rounded}, fh)
    log.debug("wrote %s", path)
    return path


def write_manifest(
    directory: Path,
    command: str,
    config_hash: str,
    grid: str,
    artifacts: Iterable[Path],
) -> Path:
    """Record what produced the files in `directory`."""
    rows: List[tuple] = [
        ("command", command),
        ("config_hash", config_hash),
        ("grid", grid),
    ]
    rows.extend(("artifact", Path(a).name) for a in artifacts)
    return _write(pd.DataFrame(rows, columns=["field", "value"]), directory / MANIFEST_NAME)
