"""
Fit the free cost/volume coefficients to published design-point ratios.

Every target (topology, m) is sized once; the fit then only re-prices the
bills of materials. Parameters are fitted in log space so they stay
positive. igbt_cost_scale / igbt_volume_scale anchor the absolute scale
(ratios are invariant to it) and are held fixed together with diode_volume,
which is collinear with tx_volume_per_unit.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import List, Optional, Sequence, Union

import numpy as np
import pandas as pd
from scipy.optimize import least_squares

from boostpet.catalog.base import Catalog
from boostpet.catalog.topologies import HYBRID_SBB
from boostpet.engine.evaluator import (
    RATIO_METRICS,
    CostVolumeCoefficients,
    baseline_point,
    design_point,
    normalize,
    price,
)
from boostpet.errors import ConfigError
from boostpet.system import SystemSpec

log = logging.getLogger(__name__)

FITTED_COEFFICIENTS = (
    "cap_cost_per_farad",
    "cap_volume_per_farad",
    "tx_total_cost",
    "tx_volume_per_unit",
    "diode_cost",
)

DEFAULT_SEED = 20240417
DEFAULT_STARTS = 8
DEFAULT_MAX_NFEV = 400
ACCEPTABLE_RESIDUAL = 0.10

# floor for log() of a zero coefficient
_LOG_FLOOR = 1e-12


@dataclass(frozen=True)
class CalibrationTarget:
    m: float
    metric: str            # one of RATIO_METRICS
    target: float
    topology: str = HYBRID_SBB


@dataclass(frozen=True)
class ResidualRow:
    m: float
    metric: str
    target: float
    model: float
    topology: str

    @property
    def residual(self) -> float:
        return self.model - self.target


@dataclass
class CalibrationResult:
    coefficients: CostVolumeCoefficients
    residuals: List[ResidualRow]
    converged: bool
    ill_conditioned: bool
    start_costs: List[float] = field(default_factory=list)
    best_start: int = 0

    @property
    def max_residual(self) -> float:
        return max((abs(r.residual) for r in self.residuals), default=0.0)

    @property
    def sum_of_squares(self) -> float:
        return sum(r.residual ** 2 for r in self.residuals)

    @property
    def acceptable(self) -> bool:
        return self.max_residual <= ACCEPTABLE_RESIDUAL


def _metric_name(raw: str) -> str:
    name = raw.strip()
    return name if name.endswith("_ratio") else f"{name}_ratio"


def load_targets(path: Union[str, Path]) -> List[CalibrationTarget]:
    """Read a targets CSV (columns m, metric, target and optionally topology)."""
    try:
        frame = pd.read_csv(path, comment="#", skipinitialspace=True)
    except pd.errors.EmptyDataError:
        raise ConfigError([f"targets file {path} is empty"]) from None
    except (OSError, pd.errors.ParserError) as exc:
        raise ConfigError([f"cannot read targets file {path}: {exc}"]) from exc

    missing = {"m", "metric", "target"} - set(frame.columns)
    if missing:
        raise ConfigError([f"targets file {path} is missing columns {sorted(missing)}"])
    if frame.empty:
        raise ConfigError([f"targets file {path} has no rows"])

    problems: List[str] = []
    targets: List[CalibrationTarget] = []
    for i, row in enumerate(frame.to_dict("records")):
        metric = _metric_name(str(row["metric"]))
        topology = row.get("topology")
        if not isinstance(topology, str) or not topology.strip():
            topology = HYBRID_SBB
        try:
            m, target = float(row["m"]), float(row["target"])
        except (TypeError, ValueError):
            problems.append(f"targets row {i}: m and target must be numbers")
            continue
        if metric not in RATIO_METRICS:
            problems.append(f"targets row {i}: unknown metric {row['metric']!r}")
        if not (target > 0 and math.isfinite(target)):
            problems.append(f"targets row {i}: target ratio must be > 0")
        if not m > 0:
            problems.append(f"targets row {i}: m must be > 0")
        targets.append(CalibrationTarget(m, metric, target, topology.strip()))

    if problems:
        raise ConfigError(problems)
    return targets


class _PricedTargets:
    """Targets sized once, re-priced per coefficient vector."""

    def __init__(self, spec: SystemSpec, catalog: Catalog, targets: Sequence[CalibrationTarget]):
        self.targets = list(targets)
        self.baseline_bom = baseline_point(spec, catalog).bom
        self.boms = [
            design_point(spec, catalog.topology(t.topology), t.m, catalog).bom
            for t in self.targets
        ]
        self.goal = np.array([t.target for t in self.targets])

    def model(self, coeffs: CostVolumeCoefficients) -> np.ndarray:
        baseline = price(self.baseline_bom, coeffs)
        return np.array([
            getattr(normalize(price(bom, coeffs), baseline), t.metric)
            for bom, t in zip(self.boms, self.targets)
        ])

    def rows(self, coeffs: CostVolumeCoefficients) -> List[ResidualRow]:
        return [
            ResidualRow(t.m, t.metric, t.target, float(value), t.topology)
            for t, value in zip(self.targets, self.model(coeffs))
        ]


def _with_params(base: CostVolumeCoefficients, log_params: np.ndarray) -> CostVolumeCoefficients:
    values = {name: float(np.exp(v)) for name, v in zip(FITTED_COEFFICIENTS, log_params)}
    return replace(base, **values)


def residual_report(
    spec: SystemSpec,
    catalog: Catalog,
    coeffs: CostVolumeCoefficients,
    targets: Sequence[CalibrationTarget],
) -> List[ResidualRow]:
    return _PricedTargets(spec, catalog, targets).rows(coeffs)


def calibrate(
    spec: SystemSpec,
    catalog: Catalog,
    targets: Sequence[CalibrationTarget],
    initial: Optional[CostVolumeCoefficients] = None,
    starts: int = DEFAULT_STARTS,
    max_nfev: int = DEFAULT_MAX_NFEV,
    seed: int = DEFAULT_SEED,
) -> CalibrationResult:
    """Deterministic multi-start least squares over the fitted coefficients.

    Start 0 is `initial` (the shipped coefficients by default); the others
    perturb it in log space with a seeded generator. The best start wins,
    ties going to the lower start index.
    """
    if not targets:
        raise ConfigError(["calibration needs at least one target"])
    initial = initial or CostVolumeCoefficients()

    priced = _PricedTargets(spec, catalog, targets)
    ill_conditioned = len({t.m for t in targets}) < 2
    if ill_conditioned:
        log.warning("all calibration targets share one modulation index; the fit is poorly conditioned")

    x0 = np.log([max(getattr(initial, name), _LOG_FLOOR) for name in FITTED_COEFFICIENTS])
    rng = np.random.default_rng(seed)
    offsets = rng.normal(0.0, 1.0, size=(max(starts, 1) - 1, len(x0)))
    start_points = [x0] + [x0 + o for o in offsets]

    def fun(x: np.ndarray) -> np.ndarray:
        return priced.model(_with_params(initial, x)) - priced.goal

    best = None
    best_index = 0
    start_costs: List[float] = []
    for index, start in enumerate(start_points):
        fit = least_squares(fun, start, method="trf", max_nfev=max_nfev)
        cost = float(2 * fit.cost)  # scipy reports half the sum of squares
        start_costs.append(cost)
        log.debug("calibration start %d: sum of squares %.6g (status %d)", index, cost, fit.status)
        if best is None or cost < start_costs[best_index]:
            best, best_index = fit, index

    converged = best.status > 0
    if not converged:
        log.warning("calibration did not converge within %d evaluations; returning best found", max_nfev)

    coefficients = _with_params(initial, best.x)
    return CalibrationResult(
        coefficients=coefficients,
        residuals=priced.rows(coefficients),
        converged=converged,
        ill_conditioned=ill_conditioned,
        start_costs=start_costs,
        best_start=best_index,
    )
