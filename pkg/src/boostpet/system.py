"""
Electrical description of the PET and the solved state at one modulation index.

Units are SI throughout: watts, volts, amperes, hertz, farads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields
from typing import List


@dataclass(frozen=True)
class SystemSpec:
    """Electrical constants of the transformer being designed."""

    rated_power: float = 5e6
    ac_phase_voltage_amplitude: float = 30e3   # V_m, phase peak
    grid_frequency: float = 50.0
    sm_capacitor_voltage: float = 2e3          # U_c
    capacitor_ripple_ratio: float = 0.10       # epsilon

    # DC/DC stage
    lv_unit_dc_voltage: float = 5e3
    dcdc_switching_frequency: float = 2500.0
    transformer_frequency: float = 5000.0
    transformer_ratio: float = 1.0
    dcdc_igbt_per_unit: int = 16
    dcdc_diode_per_unit: int = 8
    dcdc_zvs_factor: float = 0.5

    power_factor: float = 1.0
    mmc_equivalent_device_switching_frequency: float = 150.0
    waveform_samples_per_period: int = 4096

    def problems(self) -> List[str]:
        """Everything wrong with this spec, as human-readable messages."""
        out: List[str] = []
        positive = (
            "ac_phase_voltage_amplitude", "grid_frequency", "sm_capacitor_voltage",
            "lv_unit_dc_voltage", "dcdc_switching_frequency", "transformer_frequency",
            "transformer_ratio", "mmc_equivalent_device_switching_frequency",
            "dcdc_igbt_per_unit",
        )
        for name in positive:
            if not getattr(self, name) > 0:
                out.append(f"system.{name} must be > 0 (got {getattr(self, name)!r})")
        # zero power is allowed; it is the degenerate "no load" design
        if self.rated_power < 0:
            out.append(f"system.rated_power must be >= 0 (got {self.rated_power!r})")
        if not 0 < self.capacitor_ripple_ratio < 0.5:
            out.append("system.capacitor_ripple_ratio must be in (0, 0.5)")
        if not 0 < self.power_factor <= 1:
            out.append("system.power_factor must be in (0, 1]")
        if self.waveform_samples_per_period < 64:
            out.append("system.waveform_samples_per_period must be >= 64")
        if self.dcdc_diode_per_unit < 0:
            out.append("system.dcdc_diode_per_unit must be >= 0")
        if not 0 <= self.dcdc_zvs_factor <= 1:
            out.append("system.dcdc_zvs_factor must be in [0, 1]")
        return out

    @classmethod
    def field_names(cls) -> List[str]:
        return [f.name for f in fields(cls)]


@dataclass(frozen=True)
class OperatingPoint:
    """Steady-state electrical solution at modulation index m."""

    m: float
    u_dc: float
    i_dc: float
    ac_current_amplitude: float   # I_m
    angular_frequency: float
    arm_dc_current: float         # i_dc / 3
    arm_ac_amplitude: float       # I_m / 2
    phase_angle: float            # phi = arccos(pf)
    ac_phase_voltage_amplitude: float

    @property
    def min_arm_voltage(self) -> float:
        return self.u_dc / 2 - self.ac_phase_voltage_amplitude

    @property
    def max_arm_voltage(self) -> float:
        return self.u_dc / 2 + self.ac_phase_voltage_amplitude

    @property
    def power_factor(self) -> float:
        return math.cos(self.phase_angle)
