"""Tests for the input-parallel output-series DC/DC stage."""

import numpy as np
import pytest

from boostpet.catalog.loader import load_catalog
from boostpet.engine.dcdc_sizing import evaluate_dcdc, unit_count
from boostpet.engine.operating_point import solve_operating_point
from boostpet.errors import DomainError
from boostpet.system import SystemSpec

SPEC = SystemSpec()
CATALOG = load_catalog()


def _dcdc(m):
    return evaluate_dcdc(SPEC, solve_operating_point(SPEC, m), CATALOG)


@pytest.mark.parametrize("u_dc, expected", [(60e3, 12), (30e3, 6), (13e3, 3), (100.0, 1)])
def test_unit_count(u_dc, expected):
    assert unit_count(SPEC, u_dc) == expected


def test_unit_count_needs_positive_voltage():
    with pytest.raises(DomainError):
        unit_count(SPEC, 0.0)


def test_unit_count_sequence():
    counts = [_dcdc(m).unit_count for m in (1, 1.5, 2, 3, 4, 6)]
    assert counts == [12, 8, 6, 4, 3, 2]


def test_series_current_at_unity():
    assert _dcdc(1).output_series_current == pytest.approx(83.33, rel=0.01)


def test_design_at_three():
    design = _dcdc(3)
    assert design.unit_count == 4
    assert design.per_unit_power == pytest.approx(1.25e6)
    assert design.igbt_count_total == 64
    assert design.diode_count_total == 32


def test_power_splits_exactly_over_units():
    for m in np.arange(0.5, 11.2, 0.1):
        design = _dcdc(m)
        assert design.per_unit_power * design.unit_count == pytest.approx(SPEC.rated_power, rel=1e-12)
        assert design.tx_per_unit_power == design.per_unit_power


def test_units_non_increasing_and_not_over_provisioned():
    previous = None
    for m in np.arange(0.5, 11.2, 0.05):
        op = solve_operating_point(SPEC, m)
        n = unit_count(SPEC, op.u_dc)
        assert n * SPEC.lv_unit_dc_voltage >= op.u_dc - 1e-6
        assert n * SPEC.lv_unit_dc_voltage - op.u_dc < SPEC.lv_unit_dc_voltage
        if previous is not None:
            assert n <= previous
        previous = n


def test_selected_device_carries_the_current():
    for m in np.arange(0.5, 11.2, 0.05):
        design = _dcdc(m)
        stress = max(design.input_current_per_unit, design.output_series_current)
        assert design.device.rated_current >= stress
