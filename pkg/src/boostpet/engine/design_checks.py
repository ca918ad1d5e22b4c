"""
Advisory checks on an evaluated design.

Nothing here makes a design infeasible; these are the things an engineer
reviewing the numbers would point out.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List

from boostpet.catalog.topologies import FULL_BRIDGE
from boostpet.engine.evaluator import DesignEvaluation

# rated current above this multiple of the actual stress is a poor fit
OVERRATING_LIMIT = 5.0
LOW_EFFICIENCY = 0.95


@dataclass
class DesignWarning:
    severity: str       # "info", "warning", "critical"
    category: str       # "sizing", "device", "losses"
    title: str
    detail: str


def review(ev: DesignEvaluation) -> List[DesignWarning]:
    """Run every check; results sorted by severity (critical first)."""
    warnings: List[DesignWarning] = []

    _check_degenerate_arm(ev, warnings)
    _check_mmc_device_fit(ev, warnings)
    _check_dcdc_device_fit(ev, warnings)
    _check_hybridization(ev, warnings)
    _check_efficiency(ev, warnings)

    severity_order = {"critical": 0, "warning": 1, "info": 2}
    warnings.sort(key=lambda w: severity_order.get(w.severity, 99))
    return warnings


def _check_degenerate_arm(ev: DesignEvaluation, out: List[DesignWarning]):
    if ev.mmc.n_total < 2:
        out.append(DesignWarning(
            severity="warning",
            category="sizing",
            title="Degenerate arm",
            detail=(
                f"Only {ev.mmc.n_total} submodule per arm at m={ev.m:g}; the arm cannot "
                "produce a multilevel waveform."
            ),
        ))


def _check_mmc_device_fit(ev: DesignEvaluation, out: List[DesignWarning]):
    peak = ev.op.arm_dc_current + ev.op.arm_ac_amplitude
    device = ev.mmc.device
    if device.rated_current < peak:
        out.append(DesignWarning(
            severity="critical",
            category="device",
            title="MMC device under-rated",
            detail=f"{device.name} is rated {device.rated_current:.0f} A but the arm peaks at {peak:.0f} A.",
        ))
    elif peak > 0 and device.rated_current > OVERRATING_LIMIT * peak:
        out.append(DesignWarning(
            severity="info",
            category="device",
            title="MMC device does not match well",
            detail=(
                f"{device.name} is rated {device.rated_current:.0f} A against a "
                f"{peak:.0f} A arm peak ({device.rated_current / peak:.1f}x)."
            ),
        ))


def _check_dcdc_device_fit(ev: DesignEvaluation, out: List[DesignWarning]):
    stress = max(ev.dcdc.input_current_per_unit, ev.dcdc.output_series_current)
    device = ev.dcdc.device
    if device.rated_current < stress:
        out.append(DesignWarning(
            severity="critical",
            category="device",
            title="DC/DC device under-rated",
            detail=f"{device.name} is rated {device.rated_current:.0f} A but carries {stress:.0f} A.",
        ))
    elif stress > 0 and device.rated_current > OVERRATING_LIMIT * stress:
        out.append(DesignWarning(
            severity="info",
            category="device",
            title="DC/DC device does not match well",
            detail=(
                f"Series current is only {ev.dcdc.output_series_current:.0f} A on a "
                f"{device.rated_current:.0f} A {device.name}; a higher DC bus current "
                "(larger m) would use it better."
            ),
        ))


def _check_hybridization(ev: DesignEvaluation, out: List[DesignWarning]):
    if ev.topology != FULL_BRIDGE and ev.mmc.hybridization_ratio > 0.5:
        out.append(DesignWarning(
            severity="info",
            category="sizing",
            title="Mostly full-bridge arm",
            detail=(
                f"{ev.mmc.n_full} of {ev.mmc.n_total} submodules are full-bridge "
                f"(h={ev.mmc.hybridization_ratio:.2f})."
            ),
        ))


def _check_efficiency(ev: DesignEvaluation, out: List[DesignWarning]):
    if ev.rated_power > 0 and ev.losses.efficiency < LOW_EFFICIENCY:
        out.append(DesignWarning(
            severity="warning",
            category="losses",
            title="Low efficiency",
            detail=(
                f"Efficiency {ev.losses.efficiency:.2%}: MMC {ev.losses.mmc_total / 1e3:.1f} kW, "
                f"DC/DC {ev.losses.dcdc_total / 1e3:.1f} kW."
            ),
        ))
