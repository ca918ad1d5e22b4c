"""
Grid sweeps over the modulation index, objective optima and Pareto fronts.

Objectives are piecewise constant in the submodule/unit counts, so the grid
is searched exhaustively rather than with a continuous optimizer.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from boostpet.catalog.base import Catalog
from boostpet.catalog.topologies import TopologyDescriptor
from boostpet.engine.evaluator import (
    CostVolumeCoefficients,
    DesignEvaluation,
    StageTotals,
    baseline_totals,
    evaluate_design,
)
from boostpet.engine.operating_point import check_feasibility
from boostpet.errors import DomainError, EmptySweepError, OutOfRangeError
from boostpet.system import SystemSpec

log = logging.getLogger(__name__)

DEFAULT_STEP = 0.05

OBJECTIVES: Dict[str, Callable[[DesignEvaluation], float]] = {
    "cost": lambda e: e.total_cost,
    "volume": lambda e: e.total_volume,
    "loss": lambda e: e.losses.total,
}


@dataclass(frozen=True)
class InfeasiblePoint:
    m: float
    reason: str


@dataclass
class SweepResult:
    topology: str
    grid: List[float]
    evaluations: List[DesignEvaluation] = field(default_factory=list)
    infeasible: List[InfeasiblePoint] = field(default_factory=list)

    @property
    def empty(self) -> bool:
        return not self.evaluations

    @property
    def feasible_m(self) -> List[float]:
        return [e.m for e in self.evaluations]


@dataclass(frozen=True)
class ParetoPoint:
    m: float
    topology: str
    total_cost: float
    total_volume: float
    total_loss: float


def build_grid(m_lo: float, m_hi: float, step: float) -> List[float]:
    """Inclusive grid m_lo, m_lo + step, ... <= m_hi, rounded to 10 decimals."""
    if not m_lo > 0:
        raise DomainError(f"m_lo must be > 0 (got {m_lo!r})")
    if not step > 0:
        raise DomainError(f"step must be > 0 (got {step!r})")
    if m_hi < m_lo:
        raise DomainError(f"m_hi must be >= m_lo (got {m_lo!r}..{m_hi!r})")
    count = math.floor((m_hi - m_lo) / step + 1e-9)
    return [round(m_lo + k * step, 10) for k in range(count + 1)]


def _evaluate_point(
    spec: SystemSpec,
    topo: TopologyDescriptor,
    catalog: Catalog,
    coeffs: CostVolumeCoefficients,
    baseline: StageTotals,
    m: float,
) -> Union[DesignEvaluation, InfeasiblePoint]:
    violation = check_feasibility(topo, m)
    if violation is not None:
        return InfeasiblePoint(m, str(violation))
    try:
        return evaluate_design(spec, topo, m, catalog, coeffs, baseline=baseline)
    except OutOfRangeError as exc:
        return InfeasiblePoint(m, f"{topo.kind}: {exc}")


def sweep(
    spec: SystemSpec,
    topo: TopologyDescriptor,
    catalog: Catalog,
    coeffs: CostVolumeCoefficients,
    m_lo: float,
    m_hi: float,
    step: float = DEFAULT_STEP,
    workers: int = 1,
    baseline: Optional[StageTotals] = None,
) -> SweepResult:
    """Evaluate every grid point; infeasible ones are recorded, never dropped.

    With workers > 1 points are evaluated on a thread pool; map() keeps grid
    order, so the result does not depend on scheduling.
    """
    grid = build_grid(m_lo, m_hi, step)
    if baseline is None:
        baseline = baseline_totals(spec, catalog, coeffs)
    log.debug("sweeping %s over %d points (%g..%g, step %g, %d workers)",
              topo.kind, len(grid), grid[0], grid[-1], step, workers)

    def run(m: float):
        return _evaluate_point(spec, topo, catalog, coeffs, baseline, m)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(run, grid))
    else:
        outcomes = [run(m) for m in grid]

    result = SweepResult(topology=topo.kind, grid=grid)
    for outcome in outcomes:
        if isinstance(outcome, InfeasiblePoint):
            result.infeasible.append(outcome)
        else:
            result.evaluations.append(outcome)

    if result.empty:
        log.info("%s has no feasible point in %g..%g", topo.kind, grid[0], grid[-1])
    return result


def _objective(name: str) -> Callable[[DesignEvaluation], float]:
    try:
        return OBJECTIVES[name]
    except KeyError:
        raise ValueError(f"unknown objective {name!r} (expected one of {', '.join(OBJECTIVES)})") from None


def find_optimum(result: SweepResult, objective: str) -> Tuple[float, float]:
    """Grid argmin of the objective as (m_star, value); ties go to the smaller m."""
    key = _objective(objective)
    if result.empty:
        raise EmptySweepError(f"{result.topology}: no feasible point to optimize")

    best: Optional[DesignEvaluation] = None
    for ev in sorted(result.evaluations, key=lambda e: e.m):
        if best is None or key(ev) < key(best):
            best = ev
    return best.m, key(best)


def find_overall_optimum(results: Sequence[SweepResult], objective: str) -> Tuple[str, float, float]:
    """Best (topology, m_star, value) across several sweeps, smaller m winning ties."""
    candidates = []
    for result in results:
        if not result.empty:
            m, value = find_optimum(result, objective)
            candidates.append((value, m, result.topology))
    if not candidates:
        raise EmptySweepError("no feasible point in any sweep")
    value, m, topology = min(candidates, key=lambda c: (c[0], c[1]))
    return topology, m, value


def _dominated_mask(costs: np.ndarray) -> np.ndarray:
    """True where some other row is <= on every objective and < on one."""
    dominated = np.zeros(costs.shape[0], dtype=bool)
    for i, c in enumerate(costs):
        no_worse = np.all(costs <= c, axis=1)
        better = np.any(costs < c, axis=1)
        dominated[i] = bool(np.any(no_worse & better))
    return dominated


def pareto_front(results: Sequence[SweepResult]) -> List[ParetoPoint]:
    """Non-dominated designs over (total cost, total volume, total loss)."""
    points = [
        ParetoPoint(e.m, e.topology, e.total_cost, e.total_volume, e.losses.total)
        for result in results
        for e in result.evaluations
    ]
    if not points:
        raise EmptySweepError("Pareto front needs at least one feasible point")

    points.sort(key=lambda p: (p.topology, p.m))
    costs = np.array([[p.total_cost, p.total_volume, p.total_loss] for p in points])
    dominated = _dominated_mask(costs)
    return [p for p, d in zip(points, dominated) if not d]
