"""Tests for MMC and DC/DC loss models."""

from dataclasses import replace

import numpy as np
import pytest

from boostpet.catalog.devices import DeviceModel
from boostpet.catalog.loader import load_catalog
from boostpet.engine.dcdc_sizing import evaluate_dcdc
from boostpet.engine.losses import conduction_loss, dcdc_losses, efficiency, mmc_losses, total_losses
from boostpet.engine.mmc_sizing import evaluate_mmc
from boostpet.engine.operating_point import solve_operating_point
from boostpet.system import SystemSpec

SPEC = SystemSpec()
CATALOG = load_catalog()


def _device(**overrides) -> DeviceModel:
    defaults = dict(
        name="TEST", rated_voltage=4500.0, rated_current=800.0, v0=1.5, r_on=2e-3,
        esw=7.5, i_ref=800.0, v_ref=2800.0, unit_cost=1.0, unit_volume=1.0,
    )
    defaults.update(overrides)
    return DeviceModel(**defaults)


def _stages(kind, m, spec=SPEC):
    op = solve_operating_point(spec, m)
    topo = CATALOG.topology(kind)
    return op, evaluate_mmc(spec, op, topo, CATALOG), evaluate_dcdc(spec, op, CATALOG), topo


def _losses(kind, m, spec=SPEC):
    op, mmc, dcdc, topo = _stages(kind, m, spec)
    return total_losses(op, mmc, dcdc, spec, topo)


def test_half_bridge_conduction_arithmetic():
    current = np.full(16, 100.0)
    assert conduction_loss(_device(), 1, current) == pytest.approx(170.0)


def test_full_bridge_conducts_through_two_devices():
    current = np.full(16, 100.0)
    assert conduction_loss(_device(), 2, current) == pytest.approx(340.0)


def test_conduction_uses_current_magnitude():
    current = np.array([100.0, -100.0])
    assert conduction_loss(_device(), 1, current) == pytest.approx(170.0)


def test_zero_power_gives_zero_losses():
    spec = replace(SPEC, rated_power=0.0)
    losses = _losses("hybrid-sbb", 3, spec)
    assert losses.total == 0.0
    assert losses.mmc_conduction == losses.mmc_switching == losses.mmc_branch == 0.0
    assert losses.efficiency == 1.0


def test_efficiency_convention():
    assert efficiency(0.0, 0.0) == 1.0
    assert efficiency(100.0, 5.0) == pytest.approx(0.95)


def test_zvs_factor_only_touches_switching():
    op, _, dcdc, _ = _stages("hybrid-sbb", 3)
    soft = dcdc_losses(op, dcdc, SPEC)
    hard = dcdc_losses(op, dcdc, replace(SPEC, dcdc_zvs_factor=0.0))
    assert hard.switching == 0.0
    assert hard.conduction == soft.conduction
    assert soft.switching > 0


def test_dcdc_losses_scale_with_unit_count():
    op, _, dcdc, _ = _stages("hybrid-sbb", 3)
    doubled = replace(dcdc, unit_count=2 * dcdc.unit_count)
    base, twice = dcdc_losses(op, dcdc, SPEC), dcdc_losses(op, doubled, SPEC)
    assert twice.conduction == pytest.approx(2 * base.conduction)
    assert twice.switching == pytest.approx(2 * base.switching)


def test_losses_are_homogeneous_in_device_coefficients():
    op, mmc, dcdc, topo = _stages("hybrid-sbb", 2.5)
    k = 3.0

    def scaled(device):
        return replace(device, v0=device.v0 * k, r_on=device.r_on * k, esw=device.esw * k)

    base = total_losses(op, mmc, dcdc, SPEC, topo)
    heavy = total_losses(
        op, replace(mmc, device=scaled(mmc.device)), replace(dcdc, device=scaled(dcdc.device)), SPEC, topo,
    )
    for name in ("mmc_conduction", "mmc_switching", "mmc_branch", "dcdc_conduction", "dcdc_switching", "total"):
        assert getattr(heavy, name) == pytest.approx(k * getattr(base, name), rel=1e-12)


def test_total_is_sum_of_parts():
    losses = _losses("hybrid-sbb", 4)
    parts = (losses.mmc_conduction + losses.mmc_switching + losses.mmc_branch
             + losses.dcdc_conduction + losses.dcdc_switching)
    assert losses.total == pytest.approx(parts)
    assert 0 < losses.efficiency < 1


def test_branch_loss_only_on_sbb():
    assert _losses("hybrid-traditional", 1.5).mmc_branch == 0.0
    sbb = _losses("hybrid-sbb", 1.5)
    assert sbb.mmc_branch == pytest.approx(0.02 * (sbb.mmc_conduction + sbb.mmc_switching))


def test_switching_reduction_scales_switching_only():
    """The SBB saves balancing commutations; see "SBB loss advantage" in DESIGN.md."""
    op, mmc, _, topo = _stages("hybrid-sbb", 3)
    reduced = mmc_losses(op, mmc, SPEC, topo)
    full = mmc_losses(op, mmc, SPEC, replace(topo, switching_reduction_factor=1.0))
    assert reduced.conduction == full.conduction
    assert reduced.switching == pytest.approx(0.8 * full.switching)


def test_capacitor_reduction_leaves_losses_alone():
    op, mmc, _, topo = _stages("hybrid-traditional", 1.5)
    assert topo.capacitor_reduction_factor == 0.7
    assert mmc_losses(op, mmc, SPEC, topo) == mmc_losses(op, mmc, SPEC, replace(topo, capacitor_reduction_factor=1.0))


def test_hybrid_beats_full_bridge():
    assert _losses("hybrid-traditional", 1.5).total < _losses("full-bridge", 1.5).total


def test_sbb_losses_rise_with_m():
    assert _losses("hybrid-sbb", 3).total < _losses("hybrid-sbb", 5).total


@pytest.mark.parametrize("kind, m_max", [("hybrid-traditional", 2.0), ("hybrid-sbb", 7.0)])
def test_hybrid_mmc_loss_strictly_increasing(kind, m_max):
    grid = [round(1.05 + 0.05 * k, 10) for k in range(int(round((m_max - 1.05) / 0.05)) + 1)]
    mmc = [_losses(kind, m).mmc_total for m in grid]
    assert all(b > a for a, b in zip(mmc, mmc[1:]))


def test_full_bridge_loss_falls_only_where_submodules_drop():
    # N = ceil((u_dc/2 + Vm) / Uc) shrinks in steps as m rises; between steps the loss rises
    grid = [round(1.05 + 0.05 * k, 10) for k in range(120)]
    stages = [_stages("full-bridge", m) for m in grid]
    losses = [_losses("full-bridge", m).mmc_total for m in grid]
    falls = 0
    for k in range(1, len(grid)):
        if losses[k] <= losses[k - 1]:
            falls += 1
            assert stages[k][1].n_total < stages[k - 1][1].n_total, grid[k]
    assert falls > 0
    assert losses[-1] > 2 * losses[0]


def test_full_bridge_above_sbb_across_the_sbb_range():
    for k in range(120):
        m = round(1.05 + 0.05 * k, 10)
        assert _losses("hybrid-sbb", m).mmc_total < _losses("full-bridge", m).mmc_total, m


def test_full_bridge_has_highest_losses_everywhere():
    for k in range(1, 21):
        m = round(1 + 0.05 * k, 10)
        fb = _losses("full-bridge", m)
        trad = _losses("hybrid-traditional", m)
        sbb = _losses("hybrid-sbb", m)
        assert fb.mmc_conduction > trad.mmc_conduction
        assert fb.mmc_conduction > sbb.mmc_conduction
        assert sbb.mmc_total < trad.mmc_total < fb.mmc_total
