"""Tests for target loading and the coefficient fit."""

import pytest

from boostpet.catalog.loader import load_catalog
from boostpet.engine.calibration import (
    ACCEPTABLE_RESIDUAL,
    FITTED_COEFFICIENTS,
    CalibrationTarget,
    calibrate,
    load_targets,
    residual_report,
)
from boostpet.engine.evaluator import CostVolumeCoefficients
from boostpet.errors import ConfigError
from boostpet.main import SHIPPED_TARGETS
from boostpet.system import SystemSpec

SPEC = SystemSpec()
CATALOG = load_catalog()
SHIPPED = CostVolumeCoefficients()


def _targets_file(tmp_path, text):
    path = tmp_path / "targets.csv"
    path.write_text(text)
    return path


def test_shipped_targets_load():
    targets = load_targets(SHIPPED_TARGETS)
    assert len(targets) == 22
    # the two lowest design points are within reach of the traditional hybrid
    assert {t.topology for t in targets if t.m <= 2} == {"hybrid-traditional"}
    assert {t.topology for t in targets if t.m > 2} == {"hybrid-sbb"}


def test_shipped_coefficients_fit_shipped_targets():
    rows = residual_report(SPEC, CATALOG, SHIPPED, load_targets(SHIPPED_TARGETS))
    assert max(abs(r.residual) for r in rows) <= ACCEPTABLE_RESIDUAL


def test_fit_never_worse_than_starting_point():
    targets = load_targets(SHIPPED_TARGETS)
    shipped_ss = sum(r.residual ** 2 for r in residual_report(SPEC, CATALOG, SHIPPED, targets))
    result = calibrate(SPEC, CATALOG, targets, starts=1)
    assert result.sum_of_squares <= shipped_ss + 1e-12
    assert result.acceptable


def test_single_target_is_matched_and_flagged():
    current = residual_report(SPEC, CATALOG, SHIPPED, [CalibrationTarget(3.0, "total_cost_ratio", 1.0)])[0].model
    target = CalibrationTarget(3.0, "total_cost_ratio", current + 0.02)
    result = calibrate(SPEC, CATALOG, [target], starts=2)
    assert abs(result.residuals[0].residual) <= 1e-3
    assert result.ill_conditioned


def test_baseline_target_has_zero_residual():
    target = CalibrationTarget(1.0, "total_volume_ratio", 1.0, topology="half-bridge")
    row = residual_report(SPEC, CATALOG, SHIPPED, [target])[0]
    assert row.residual == 0.0


def test_fit_only_moves_fitted_coefficients():
    result = calibrate(SPEC, CATALOG, load_targets(SHIPPED_TARGETS)[:6], starts=2)
    fitted = result.coefficients.as_dict()
    for name, value in SHIPPED.as_dict().items():
        if name not in FITTED_COEFFICIENTS:
            assert fitted[name] == value
        else:
            assert fitted[name] > 0


def test_calibration_is_deterministic():
    targets = load_targets(SHIPPED_TARGETS)[:8]
    first = calibrate(SPEC, CATALOG, targets, starts=3, seed=7)
    second = calibrate(SPEC, CATALOG, targets, starts=3, seed=7)
    assert first.coefficients == second.coefficients
    assert first.start_costs == second.start_costs
    assert len(first.start_costs) == 3
    assert first.start_costs[first.best_start] == min(first.start_costs)


def test_calibrate_rejects_empty_targets():
    with pytest.raises(ConfigError):
        calibrate(SPEC, CATALOG, [])


def test_metric_suffix_is_optional(tmp_path):
    path = _targets_file(tmp_path, "m,metric,target\n2,total_cost,0.8\n")
    [target] = load_targets(path)
    assert target.metric == "total_cost_ratio"
    assert target.topology == "hybrid-sbb"


@pytest.mark.parametrize("text, fragment", [
    ("", "empty"),
    ("m,metric,target\n", "no rows"),
    ("m,target\n2,0.8\n", "missing columns"),
    ("m,metric,target\n2,weight,0.8\n", "unknown metric"),
    ("m,metric,target\n2,total_cost,0\n", "must be > 0"),
    ("m,metric,target\n-1,total_cost,0.5\n", "m must be > 0"),
])
def test_bad_targets_file(tmp_path, text, fragment):
    with pytest.raises(ConfigError) as excinfo:
        load_targets(_targets_file(tmp_path, text))
    assert any(fragment in p for p in excinfo.value.problems)


def test_all_row_problems_reported_together(tmp_path):
    path = _targets_file(tmp_path, "m,metric,target\n2,weight,0.8\n3,total_cost,-1\n")
    with pytest.raises(ConfigError) as excinfo:
        load_targets(path)
    assert len(excinfo.value.problems) == 2
