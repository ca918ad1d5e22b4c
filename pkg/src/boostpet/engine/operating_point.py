"""
Steady-state operating point of the PET at a given modulation index.

m = 2*V_m / u_dc. Per-arm model with circulating current taken as zero:
    v(theta) = u_dc/2 - V_m*sin(theta)
    i(theta) = i_dc/3 + (I_m/2)*sin(theta - phi)
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from boostpet.catalog.topologies import HALF_BRIDGE, TopologyDescriptor
from boostpet.errors import DomainError
from boostpet.system import OperatingPoint, SystemSpec


@dataclass(frozen=True)
class Violation:
    """Why a topology cannot run at m. A value, not an exception."""

    kind: str
    m: float
    bound: str          # "m_min" or "m_max"
    limit: float

    def __str__(self) -> str:
        if self.bound == "m_max":
            return f"{self.kind}: m={self.m:g} exceeds m_max={self.limit:g}"
        return f"{self.kind}: m={self.m:g} must be above m_min={self.limit:g}"


@dataclass(frozen=True)
class ArmWaveforms:
    theta: np.ndarray
    voltage: np.ndarray
    current: np.ndarray

    @property
    def power(self) -> np.ndarray:
        return self.voltage * self.current


def solve_operating_point(spec: SystemSpec, m: float) -> OperatingPoint:
    if not m > 0:
        raise DomainError(f"modulation index must be > 0 (got {m!r})")

    u_dc = 2 * spec.ac_phase_voltage_amplitude / m
    i_dc = spec.rated_power / u_dc
    i_m = 2 * spec.rated_power / (3 * spec.ac_phase_voltage_amplitude * spec.power_factor)
    return OperatingPoint(
        m=m,
        u_dc=u_dc,
        i_dc=i_dc,
        ac_current_amplitude=i_m,
        angular_frequency=2 * math.pi * spec.grid_frequency,
        arm_dc_current=i_dc / 3,
        arm_ac_amplitude=i_m / 2,
        phase_angle=math.acos(spec.power_factor),
        ac_phase_voltage_amplitude=spec.ac_phase_voltage_amplitude,
    )


def arm_waveforms(op: OperatingPoint, spec: SystemSpec, closed: bool = False) -> ArmWaveforms:
    """Sample upper-arm voltage and current over one grid period.

    The default grid is theta in [0, 2*pi) with waveform_samples_per_period
    points. closed=True appends the theta = 2*pi endpoint, which is what
    the energy integral needs.
    """
    n = spec.waveform_samples_per_period
    theta = np.linspace(0.0, 2 * np.pi, n + 1 if closed else n, endpoint=closed)
    voltage = op.u_dc / 2 - op.ac_phase_voltage_amplitude * np.sin(theta)
    current = op.arm_dc_current + op.arm_ac_amplitude * np.sin(theta - op.phase_angle)
    return ArmWaveforms(theta=theta, voltage=voltage, current=current)


def check_feasibility(topo: TopologyDescriptor, m: float) -> Optional[Violation]:
    """None when m_min < m <= m_max, else the violated bound."""
    m_max = min(topo.m_max, 1.0) if topo.kind == HALF_BRIDGE else topo.m_max
    if m > m_max:
        return Violation(topo.kind, m, "m_max", m_max)
    if not m > topo.m_min:
        return Violation(topo.kind, m, "m_min", topo.m_min)
    return None
