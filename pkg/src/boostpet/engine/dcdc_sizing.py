"""
Input-parallel output-series DC/DC stage.

Each unit is a diode-clamped dual active bridge on a lv_unit_dc_voltage bus:
two three-level bridges (16 IGBTs, 8 clamp diodes) around one transformer.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from boostpet.catalog.base import Catalog, select_dcdc_device
from boostpet.catalog.devices import DeviceModel
from boostpet.errors import DomainError
from boostpet.system import OperatingPoint, SystemSpec


@dataclass(frozen=True)
class DcdcDesign:
    unit_count: int
    per_unit_power: float           # W
    input_current_per_unit: float   # A
    output_series_current: float    # A, equals i_dc
    device: DeviceModel
    igbt_per_unit: int
    diode_per_unit: int
    igbt_count_total: int
    tx_per_unit_power: float        # W

    @property
    def diode_count_total(self) -> int:
        return self.unit_count * self.diode_per_unit


def unit_count(spec: SystemSpec, u_dc: float) -> int:
    if not u_dc > 0:
        raise DomainError(f"DC bus voltage must be > 0 (got {u_dc!r})")
    return max(1, math.ceil(u_dc / spec.lv_unit_dc_voltage - 1e-9))


def evaluate_dcdc(spec: SystemSpec, op: OperatingPoint, catalog: Catalog) -> DcdcDesign:
    n = unit_count(spec, op.u_dc)
    per_unit_power = spec.rated_power / n
    return DcdcDesign(
        unit_count=n,
        per_unit_power=per_unit_power,
        input_current_per_unit=per_unit_power / spec.lv_unit_dc_voltage,
        output_series_current=op.i_dc,
        device=select_dcdc_device(catalog, op.m),
        igbt_per_unit=spec.dcdc_igbt_per_unit,
        diode_per_unit=spec.dcdc_diode_per_unit,
        igbt_count_total=n * spec.dcdc_igbt_per_unit,
        tx_per_unit_power=per_unit_power,
    )
