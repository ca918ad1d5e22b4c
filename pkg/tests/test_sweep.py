"""Tests for grid sweeps, optima and the Pareto front."""

from dataclasses import replace

import pytest

from boostpet.catalog.loader import load_catalog
from boostpet.engine.evaluator import CostVolumeCoefficients
from boostpet.engine.sweep import (
    SweepResult,
    build_grid,
    find_optimum,
    find_overall_optimum,
    pareto_front,
    sweep,
)
from boostpet.errors import DomainError, EmptySweepError
from boostpet.system import SystemSpec

SPEC = SystemSpec()
CATALOG = load_catalog()
COEFFS = CostVolumeCoefficients()


def _sweep(kind, m_lo, m_hi, step=0.05, workers=1):
    return sweep(SPEC, CATALOG.topology(kind), CATALOG, COEFFS, m_lo, m_hi, step, workers=workers)


def _at(result, m):
    return next(e for e in result.evaluations if e.m == m)


@pytest.fixture(scope="module")
def hybrid_sweeps():
    return [_sweep("hybrid-traditional", 1.0, 7.0), _sweep("hybrid-sbb", 1.0, 7.0)]


def test_grid_is_inclusive():
    grid = build_grid(1.0, 2.0, 0.05)
    assert len(grid) == 21
    assert grid[0] == 1.0 and grid[-1] == 2.0
    assert grid[7] == 1.35


def test_step_larger_than_span_gives_single_point():
    assert build_grid(1.0, 1.5, 2.0) == [1.0]


@pytest.mark.parametrize("args", [(0.0, 2.0, 0.1), (1.0, 2.0, 0.0), (2.0, 1.0, 0.1), (1.0, 2.0, -0.1)])
def test_bad_grid_raises(args):
    with pytest.raises(DomainError):
        build_grid(*args)


def test_infeasible_points_are_recorded():
    result = _sweep("hybrid-traditional", 1.0, 3.0, 0.1)
    assert result.feasible_m == pytest.approx([1.1 + 0.1 * k for k in range(10)])
    assert len(result.infeasible) == 11
    assert result.infeasible[0].m == 1.0
    assert "m_max=2" in result.infeasible[-1].reason


def test_full_bridge_covers_whole_range():
    result = _sweep("full-bridge", 1.0, 7.0, 0.5)
    assert len(result.evaluations) == 13
    assert result.infeasible == []


def test_half_bridge_above_one_is_empty():
    result = _sweep("half-bridge", 3.0, 4.0, 0.5)
    assert result.empty
    with pytest.raises(EmptySweepError):
        find_optimum(result, "cost")


def test_workers_do_not_change_results():
    serial = _sweep("hybrid-sbb", 1.0, 7.0, 0.25)
    parallel = _sweep("hybrid-sbb", 1.0, 7.0, 0.25, workers=4)
    assert parallel.feasible_m == serial.feasible_m
    assert [e.total_cost for e in parallel.evaluations] == [e.total_cost for e in serial.evaluations]
    assert [p.m for p in parallel.infeasible] == [p.m for p in serial.infeasible]


def test_unit_count_non_increasing_along_sweep(hybrid_sweeps):
    units = [e.dcdc.unit_count for e in hybrid_sweeps[1].evaluations]
    assert all(a >= b for a, b in zip(units, units[1:]))


def test_loss_optimum_is_leftmost_for_hybrids(hybrid_sweeps):
    for result in hybrid_sweeps:
        m_star, _ = find_optimum(result, "loss")
        assert m_star == result.feasible_m[0]


def test_hybrid_volume_optimum(hybrid_sweeps):
    topology, m_star, _ = find_overall_optimum(hybrid_sweeps, "volume")
    result = next(r for r in hybrid_sweeps if r.topology == topology)
    assert topology == "hybrid-traditional"
    assert 1.5 <= m_star <= 2.0
    assert _at(result, m_star).normalized.total_volume_ratio == pytest.approx(0.75, abs=0.05)


def test_sbb_cost_optimum(hybrid_sweeps):
    result = hybrid_sweeps[1]
    m_star, _ = find_optimum(result, "cost")
    assert 2.5 <= m_star <= 5.5
    assert _at(result, m_star).normalized.total_cost_ratio == pytest.approx(0.68, abs=0.05)


def test_hybrid_cost_optimum_is_the_sbb(hybrid_sweeps):
    topology, m_star, _ = find_overall_optimum(hybrid_sweeps, "cost")
    assert topology == "hybrid-sbb"
    assert 2.5 <= m_star <= 5.5


def test_ties_go_to_smaller_m():
    ev = _sweep("hybrid-sbb", 2.0, 2.0).evaluations[0]
    result = SweepResult("hybrid-sbb", [2.0, 3.0], evaluations=[replace(ev, m=3.0), ev])
    assert find_optimum(result, "cost") == (2.0, ev.total_cost)


def test_unknown_objective():
    with pytest.raises(ValueError):
        find_optimum(_sweep("full-bridge", 2.0, 2.0), "weight")


def test_pareto_of_single_point():
    result = _sweep("full-bridge", 2.0, 2.0)
    [point] = pareto_front([result])
    assert point.m == 2.0 and point.topology == "full-bridge"


def test_pareto_drops_dominated_copy():
    ev = _sweep("hybrid-sbb", 2.0, 2.0).evaluations[0]
    worse = replace(ev, m=2.5, total_cost=ev.total_cost * 1.1)
    front = pareto_front([SweepResult("hybrid-sbb", [2.0, 2.5], evaluations=[ev, worse])])
    assert [p.m for p in front] == [2.0]


def test_pareto_front_is_exactly_the_non_dominated_set(hybrid_sweeps):
    results = hybrid_sweeps + [_sweep("full-bridge", 1.0, 7.0, 0.25)]
    front = pareto_front(results)
    objectives = [
        (e.topology, e.m, (e.total_cost, e.total_volume, e.losses.total))
        for r in results for e in r.evaluations
    ]

    def dominated(c):
        return any(
            all(o <= x for o, x in zip(other, c)) and any(o < x for o, x in zip(other, c))
            for _, _, other in objectives
        )

    on_front = {(p.topology, p.m) for p in front}
    for topology, m, c in objectives:
        assert ((topology, m) in on_front) == (not dominated(c))


def test_pareto_contains_each_single_objective_optimum(hybrid_sweeps):
    on_front = {(p.topology, p.m) for p in pareto_front(hybrid_sweeps)}
    for objective in ("cost", "volume", "loss"):
        topology, m_star, _ = find_overall_optimum(hybrid_sweeps, objective)
        assert (topology, m_star) in on_front


def test_pareto_needs_a_feasible_point():
    with pytest.raises(EmptySweepError):
        pareto_front([SweepResult("half-bridge", [3.0])])
