"""
Conduction and switching losses for both power stages.

Device conduction follows v_on(i) = V0 + R*i. Switching energy scales
linearly with current and blocking voltage from the datasheet reference
point (i_ref, v_ref).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from boostpet.catalog.devices import DeviceModel
from boostpet.catalog.topologies import TopologyDescriptor
from boostpet.engine.dcdc_sizing import DcdcDesign
from boostpet.engine.mmc_sizing import ARMS, MmcDesign
from boostpet.engine.operating_point import arm_waveforms
from boostpet.system import OperatingPoint, SystemSpec


class MmcLosses(NamedTuple):
    conduction: float
    switching: float
    branch: float


class DcdcLosses(NamedTuple):
    conduction: float
    switching: float


@dataclass(frozen=True)
class LossBreakdown:
    mmc_conduction: float
    mmc_switching: float
    mmc_branch: float
    dcdc_conduction: float
    dcdc_switching: float
    total: float
    efficiency: float

    @property
    def mmc_total(self) -> float:
        return self.mmc_conduction + self.mmc_switching + self.mmc_branch

    @property
    def dcdc_total(self) -> float:
        return self.dcdc_conduction + self.dcdc_switching


def conduction_loss(device: DeviceModel, conducting_devices: int, current: np.ndarray) -> float:
    """Mean conduction loss of one arm carrying the sampled current."""
    magnitude = np.abs(current)
    return float(conducting_devices * np.mean(device.on_state_voltage(magnitude) * magnitude))


def switching_energy(device: DeviceModel, current: float, voltage: float) -> float:
    return device.esw * (current / device.i_ref) * (voltage / device.v_ref)


def mmc_losses(op: OperatingPoint, mmc: MmcDesign, spec: SystemSpec, topo: TopologyDescriptor) -> MmcLosses:
    current = arm_waveforms(op, spec).current
    conduction = ARMS * conduction_loss(mmc.device, mmc.conducting_devices_per_arm, current)

    i_avg = float(np.mean(np.abs(current)))
    # balancing commutations saved by the topology
    switching = (
        mmc.igbt_count_total
        * spec.mmc_equivalent_device_switching_frequency
        * switching_energy(mmc.device, i_avg, spec.sm_capacitor_voltage)
        * topo.switching_reduction_factor
    )
    branch = topo.branch_loss_fraction * (conduction + switching)
    return MmcLosses(conduction, switching, branch)


def dcdc_losses(op: OperatingPoint, dcdc: DcdcDesign, spec: SystemSpec) -> DcdcLosses:
    """Half of each unit's devices conduct at any instant; switching is soft by dcdc_zvs_factor."""
    i_u = dcdc.input_current_per_unit
    device = dcdc.device
    per_unit_conduction = dcdc.igbt_per_unit / 2 * device.on_state_voltage(i_u) * i_u
    per_unit_switching = (
        dcdc.igbt_per_unit
        * spec.dcdc_switching_frequency
        * switching_energy(device, i_u, spec.lv_unit_dc_voltage / 2)
        * spec.dcdc_zvs_factor
    )
    return DcdcLosses(dcdc.unit_count * per_unit_conduction, dcdc.unit_count * per_unit_switching)


def efficiency(rated_power: float, total_loss: float) -> float:
    """(P - losses)/P; 1.0 for the no-load case by convention."""
    if rated_power == 0:
        return 1.0
    return (rated_power - total_loss) / rated_power


def total_losses(
    op: OperatingPoint,
    mmc: MmcDesign,
    dcdc: DcdcDesign,
    spec: SystemSpec,
    topo: TopologyDescriptor,
) -> LossBreakdown:
    m_loss = mmc_losses(op, mmc, spec, topo)
    d_loss = dcdc_losses(op, dcdc, spec)
    total = sum(m_loss) + sum(d_loss)
    return LossBreakdown(
        mmc_conduction=m_loss.conduction,
        mmc_switching=m_loss.switching,
        mmc_branch=m_loss.branch,
        dcdc_conduction=d_loss.conduction,
        dcdc_switching=d_loss.switching,
        total=total,
        efficiency=efficiency(spec.rated_power, total),
    )
