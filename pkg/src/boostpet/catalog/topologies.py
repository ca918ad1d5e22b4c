"""
Topology descriptors: the rules that make one MMC family differ from another.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List

HALF_BRIDGE = "half-bridge"
HYBRID_TRADITIONAL = "hybrid-traditional"
HYBRID_SBB = "hybrid-sbb"
FULL_BRIDGE = "full-bridge"

TOPOLOGY_KINDS = (HALF_BRIDGE, HYBRID_TRADITIONAL, HYBRID_SBB, FULL_BRIDGE)

# The three topologies compared against each other; half-bridge is the baseline.
COMPARED_KINDS = (HYBRID_TRADITIONAL, HYBRID_SBB, FULL_BRIDGE)

RULE_NONE = "none"
RULE_MINIMAL = "minimal-negative-voltage"
RULE_ALL_FULL = "all-full-bridge"

FBSM_RULES = (RULE_NONE, RULE_MINIMAL, RULE_ALL_FULL)


@dataclass(frozen=True)
class TopologyDescriptor:
    kind: str
    m_min: float                 # exclusive
    m_max: float                 # inclusive
    fbsm_rule: str
    branch_igbt_count: int = 0
    branch_cost: float = 0.0
    branch_volume: float = 0.0
    branch_loss_fraction: float = 0.0
    capacitor_reduction_factor: float = 1.0
    switching_reduction_factor: float = 1.0

    @property
    def modulation_range(self) -> float:
        return self.m_max - self.m_min

    def problems(self) -> List[str]:
        out: List[str] = []
        where = f"topology {self.kind}"
        if self.kind not in TOPOLOGY_KINDS:
            out.append(f"unknown topology kind {self.kind!r} (expected one of {', '.join(TOPOLOGY_KINDS)})")
            return out
        if self.fbsm_rule not in FBSM_RULES:
            out.append(f"{where}: unknown fbsm_rule {self.fbsm_rule!r}")
        if not 0 <= self.m_min < self.m_max:
            out.append(f"{where}: need 0 <= m_min < m_max")
        if not 0 < self.capacitor_reduction_factor <= 1:
            out.append(f"{where}: capacitor_reduction_factor must be in (0, 1]")
        if not 0 < self.switching_reduction_factor <= 1:
            out.append(f"{where}: switching_reduction_factor must be in (0, 1]")
        if min(self.branch_igbt_count, self.branch_cost, self.branch_volume, self.branch_loss_fraction) < 0:
            out.append(f"{where}: branch overheads must be >= 0")

        if self.kind == HALF_BRIDGE:
            if self.m_max > 1:
                out.append(f"{where}: m_max must be <= 1 (arm voltage cannot go negative)")
            if self.fbsm_rule != RULE_NONE:
                out.append(f"{where}: fbsm_rule must be {RULE_NONE}")
        elif self.kind in (HYBRID_TRADITIONAL, HYBRID_SBB):
            if self.fbsm_rule != RULE_MINIMAL:
                out.append(f"{where}: fbsm_rule must be {RULE_MINIMAL}")
        elif self.kind == FULL_BRIDGE and self.fbsm_rule != RULE_ALL_FULL:
            out.append(f"{where}: fbsm_rule must be {RULE_ALL_FULL}")
        return out
