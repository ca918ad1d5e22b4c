"""
MMC stage sizing: submodule counts, arm energy ripple, submodule capacitance
and the IGBT bill.

HBSM = 2 IGBTs, FBSM = 4 IGBTs, six arms. No redundancy submodules.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.integrate import cumulative_trapezoid

from boostpet.catalog.base import Catalog, select_mmc_device
from boostpet.catalog.devices import DeviceModel
from boostpet.catalog.topologies import RULE_ALL_FULL, RULE_MINIMAL, TopologyDescriptor
from boostpet.engine.operating_point import arm_waveforms, check_feasibility
from boostpet.errors import FeasibilityError
from boostpet.system import OperatingPoint, SystemSpec

log = logging.getLogger(__name__)

ARMS = 6
IGBT_PER_HBSM = 2
IGBT_PER_FBSM = 4

# guards ceilings/floors against 2*V_m/m landing a hair off an integer
_COUNT_TOL = 1e-9


class SubmoduleCounts(NamedTuple):
    n_total: int
    n_half: int
    n_full: int


@dataclass(frozen=True)
class MmcDesign:
    n_total: int
    n_half: int
    n_full: int
    hybridization_ratio: float
    sm_capacitance: float          # F, per submodule
    arm_energy_ripple: float       # J, peak-to-peak per arm
    device: DeviceModel
    igbt_count_total: int
    total_capacitance: float       # F, 6*N*C

    @property
    def conducting_devices_per_arm(self) -> int:
        """One device in the current path per HBSM, two per FBSM."""
        return self.n_half + 2 * self.n_full

    @property
    def igbt_per_arm(self) -> int:
        return IGBT_PER_HBSM * self.n_half + IGBT_PER_FBSM * self.n_full


def size_submodules(spec: SystemSpec, op: OperatingPoint, topo: TopologyDescriptor) -> SubmoduleCounts:
    violation = check_feasibility(topo, op.m)
    if violation is not None:
        raise FeasibilityError(violation)

    uc = spec.sm_capacitor_voltage
    n_total = math.ceil(op.max_arm_voltage / uc - _COUNT_TOL)

    if topo.fbsm_rule == RULE_ALL_FULL:
        n_full = n_total
    elif topo.fbsm_rule == RULE_MINIMAL:
        # smallest count whose negative reach strictly covers the arm minimum
        reach = -op.min_arm_voltage / uc
        n_full = math.floor(reach + _COUNT_TOL) + 1 if reach > _COUNT_TOL else 0
    else:
        n_full = 0

    return SubmoduleCounts(n_total, n_total - n_full, n_full)


def arm_energy_ripple(op: OperatingPoint, spec: SystemSpec) -> float:
    """Peak-to-peak of the integrated arm power over one closed period, in joules."""
    wave = arm_waveforms(op, spec, closed=True)
    energy = cumulative_trapezoid(wave.power, wave.theta, initial=0.0) / op.angular_frequency
    return float(np.max(energy) - np.min(energy))


def arm_energy_ripple_closed_form(op: OperatingPoint) -> float:
    """Same quantity as arm_energy_ripple, from the analytic extrema.

    With A = u_dc/2, B = i_dc/3, C = I_m/2 the integrated arm power is
        w*e(theta) = -A*C*cos(theta - phi) + V_m*B*cos(theta) + V_m*C*sin(2*theta - phi)/4
    (zero mean power removes the secular term). Its extrema sit where the
    arm voltage or the arm current crosses zero.
    """
    a, b, c = op.u_dc / 2, op.arm_dc_current, op.arm_ac_amplitude
    vm, phi = op.ac_phase_voltage_amplitude, op.phase_angle
    if c == 0 or vm == 0:
        return 0.0

    roots = []
    for s, shift in ((a / vm, 0.0), (-b / c, phi)):
        if -1.0 <= s <= 1.0:
            base = math.asin(s)
            roots.extend((base + shift, math.pi - base + shift))
    if not roots:
        return 0.0

    def scaled_energy(theta: float) -> float:
        return -a * c * math.cos(theta - phi) + vm * b * math.cos(theta) + vm * c * math.sin(2 * theta - phi) / 4

    values = [scaled_energy(t) for t in roots]
    return (max(values) - min(values)) / op.angular_frequency


def size_capacitor(spec: SystemSpec, delta_e: float, n_total: int, topo: TopologyDescriptor) -> float:
    """Per-submodule capacitance keeping each capacitor inside +/- epsilon of U_c."""
    band = 2 * n_total * spec.sm_capacitor_voltage ** 2 * spec.capacitor_ripple_ratio
    return topo.capacitor_reduction_factor * delta_e / band


def evaluate_mmc(spec: SystemSpec, op: OperatingPoint, topo: TopologyDescriptor, catalog: Catalog) -> MmcDesign:
    counts = size_submodules(spec, op, topo)
    device = select_mmc_device(catalog, op.m)
    delta_e = arm_energy_ripple(op, spec)
    c_sm = size_capacitor(spec, delta_e, counts.n_total, topo)
    igbt_per_arm = IGBT_PER_HBSM * counts.n_half + IGBT_PER_FBSM * counts.n_full
    if counts.n_total < 2:
        log.warning("%s at m=%g has only %d submodule per arm", topo.kind, op.m, counts.n_total)

    return MmcDesign(
        n_total=counts.n_total,
        n_half=counts.n_half,
        n_full=counts.n_full,
        hybridization_ratio=counts.n_full / counts.n_total,
        sm_capacitance=c_sm,
        arm_energy_ripple=delta_e,
        device=device,
        igbt_count_total=ARMS * igbt_per_arm + topo.branch_igbt_count,
        total_capacitance=ARMS * counts.n_total * c_sm,
    )
