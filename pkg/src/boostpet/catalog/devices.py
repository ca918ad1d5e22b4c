"""
Switching-device models and the modulation-index -> device lookup tables.

A table is an ordered list of right-closed intervals (m_low, m_high]; the
row whose interval contains m wins.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence, Tuple

from boostpet.errors import OutOfRangeError


@dataclass(frozen=True)
class DeviceModel:
    name: str
    rated_voltage: float           # V
    rated_current: float           # A
    v0: float                      # on-state threshold voltage, V
    r_on: float                    # on-state slope resistance, ohm
    esw: float                     # switching energy per pulse at (i_ref, v_ref), J
    i_ref: float                   # A
    v_ref: float                   # V
    unit_cost: float               # currency units
    unit_volume: float             # liters

    def problems(self) -> List[str]:
        out = []
        if not self.rated_voltage > 0:
            out.append(f"device {self.name}: rated_voltage_v must be > 0")
        if not self.rated_current > 0:
            out.append(f"device {self.name}: rated_current_a must be > 0")
        for attr in ("v0", "r_on", "esw", "unit_cost", "unit_volume"):
            if getattr(self, attr) < 0:
                out.append(f"device {self.name}: {attr} must be >= 0")
        for attr in ("i_ref", "v_ref"):
            if not getattr(self, attr) > 0:
                out.append(f"device {self.name}: {attr} must be > 0")
        return out

    def on_state_voltage(self, current):
        """Linear conduction model v_on(i) = V0 + R*i. Works on arrays too."""
        return self.v0 + self.r_on * current


@dataclass(frozen=True)
class DeviceRange:
    m_low: float
    m_high: float
    device: DeviceModel

    def contains(self, m: float) -> bool:
        return self.m_low < m <= self.m_high


@dataclass(frozen=True)
class DeviceTable:
    """Named, validated list of DeviceRange rows sorted by m."""

    name: str
    rows: Tuple[DeviceRange, ...]

    @property
    def span(self) -> Tuple[float, float]:
        return (self.rows[0].m_low, self.rows[-1].m_high)

    @property
    def boundaries(self) -> List[float]:
        """Interior boundaries between consecutive rows."""
        return [row.m_high for row in self.rows[:-1]]

    def select(self, m: float) -> DeviceModel:
        for row in self.rows:
            if row.contains(m):
                return row.device
        raise OutOfRangeError(self.name, m, self.span)


def table_problems(name: str, rows: Sequence[DeviceRange]) -> List[str]:
    """Check that rows are sorted, contiguous and non-overlapping."""
    if not rows:
        return [f"{name} device table is empty"]

    out: List[str] = []
    for i, row in enumerate(rows):
        if not row.m_low < row.m_high:
            out.append(f"{name} row {i} ({row.device.name}): m_low must be < m_high")
        out.extend(row.device.problems())

    for i in range(1, len(rows)):
        prev, cur = rows[i - 1], rows[i]
        if cur.m_low < prev.m_high:
            out.append(
                f"{name} rows {i - 1} and {i} overlap "
                f"({prev.device.name} ends at {prev.m_high:g}, {cur.device.name} starts at {cur.m_low:g})"
            )
        elif cur.m_low > prev.m_high:
            out.append(
                f"{name} rows {i - 1} and {i} leave a gap "
                f"between m={prev.m_high:g} and m={cur.m_low:g}"
            )
    return out
