"""
Side-by-side ranking of the three boost-capable MMC topologies.

Sweeps each topology over a modulation-index window, averages the
per-criterion figures over the points every topology can reach, and ranks
them. Topologies that cannot run anywhere in the window are flagged and
left out of the window criteria.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from boostpet.catalog.base import Catalog
from boostpet.catalog.topologies import COMPARED_KINDS
from boostpet.engine.evaluator import CostVolumeCoefficients, baseline_totals
from boostpet.engine.sweep import DEFAULT_STEP, SweepResult, sweep
from boostpet.errors import EmptySweepError
from boostpet.system import SystemSpec

log = logging.getLogger(__name__)


@dataclass
class TopologyScore:
    kind: str
    modulation_range: float
    points: int                 # feasible window points used for the means
    mean_power_density: Optional[float] = None   # W/L
    mean_efficiency: Optional[float] = None
    mean_cost: Optional[float] = None

    @property
    def in_window(self) -> bool:
        return self.points > 0


@dataclass
class CriterionRanking:
    criterion: str
    label: str
    order: List[str]            # best first
    missing: List[str] = field(default_factory=list)

    def rank_of(self, kind: str) -> Optional[int]:
        return self.order.index(kind) + 1 if kind in self.order else None


@dataclass
class RankingTable:
    window: Tuple[float, float]
    common_points: List[float]
    scores: List[TopologyScore]
    rankings: List[CriterionRanking]
    flagged: List[str]          # topologies infeasible over the whole window
    notes: List[str]
    summary: str

    def ranking(self, criterion: str) -> CriterionRanking:
        for r in self.rankings:
            if r.criterion == criterion:
                return r
        raise KeyError(criterion)

    def rank_of(self, kind: str, criterion: str) -> Optional[int]:
        return self.ranking(criterion).rank_of(kind)


# Criteria: attribute on TopologyScore, label, whether higher is better,
# and whether the criterion depends on the window.
_CRITERIA = [
    ("modulation_range",   "Modulation index range", True,  False),
    ("mean_cost",          "Lower cost",             False, True),
    ("mean_power_density", "Power density",          True,  True),
    ("mean_efficiency",    "Efficiency",             True,  True),
]


def _mean(values: Sequence[float]) -> Optional[float]:
    return float(np.mean(values)) if len(values) else None


def _score(result: SweepResult, modulation_range: float, use: Sequence[float]) -> TopologyScore:
    chosen = [e for e in result.evaluations if e.m in use]
    return TopologyScore(
        kind=result.topology,
        modulation_range=modulation_range,
        points=len(chosen),
        mean_power_density=_mean([e.power_density for e in chosen]),
        mean_efficiency=_mean([e.losses.efficiency for e in chosen]),
        mean_cost=_mean([e.total_cost for e in chosen]),
    )


def rank_topologies(
    spec: SystemSpec,
    catalog: Catalog,
    coeffs: CostVolumeCoefficients,
    m_window: Tuple[float, float] = (1.0, 2.0),
    step: float = DEFAULT_STEP,
    kinds: Sequence[str] = COMPARED_KINDS,
    workers: int = 1,
) -> RankingTable:
    lo, hi = m_window
    baseline = baseline_totals(spec, catalog, coeffs)
    results: Dict[str, SweepResult] = {
        kind: sweep(spec, catalog.topology(kind), catalog, coeffs, lo, hi, step,
                    workers=workers, baseline=baseline)
        for kind in kinds
    }

    present = [k for k in kinds if not results[k].empty]
    flagged = [k for k in kinds if results[k].empty]
    if not present:
        raise EmptySweepError(f"no topology is feasible anywhere in {lo:g}..{hi:g}")
    for kind in flagged:
        log.info("%s is infeasible over the whole window %g..%g", kind, lo, hi)

    notes = [f"{kind} is infeasible everywhere in {lo:g}..{hi:g}" for kind in flagged]
    common = sorted(set.intersection(*(set(results[k].feasible_m) for k in present)))
    if not common:
        notes.append("no common feasible point; means use each topology's own points")

    scores = []
    for kind in kinds:
        use = common or results[kind].feasible_m
        scores.append(_score(results[kind], catalog.topology(kind).modulation_range, use))

    rankings = []
    for attr, label, higher_is_better, windowed in _CRITERIA:
        ranked = [s for s in scores if getattr(s, attr) is not None and (s.in_window or not windowed)]
        ranked.sort(key=lambda s: getattr(s, attr), reverse=higher_is_better)
        rankings.append(CriterionRanking(
            criterion=attr,
            label=label,
            order=[s.kind for s in ranked],
            missing=[s.kind for s in scores if s not in ranked],
        ))

    return RankingTable(
        window=(lo, hi),
        common_points=common,
        scores=scores,
        rankings=rankings,
        flagged=flagged,
        notes=notes,
        summary=_summarize(rankings),
    )


def _summarize(rankings: List[CriterionRanking]) -> str:
    parts = [f"{r.label.lower()}: {r.order[0]}" for r in rankings if r.order]
    return "Best by " + "; ".join(parts) + "." if parts else "Nothing to rank."
