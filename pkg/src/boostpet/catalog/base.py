"""
The loaded catalog: both device tables plus the topology descriptors.

Immutable after load, so sweep workers share one instance.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Tuple

from boostpet.catalog.devices import DeviceModel, DeviceTable
from boostpet.catalog.topologies import TopologyDescriptor
from boostpet.errors import ConfigError


@dataclass(frozen=True)
class Catalog:
    mmc_device_table: DeviceTable
    dcdc_device_table: DeviceTable
    topologies: Tuple[TopologyDescriptor, ...]

    @property
    def topology_map(self) -> Dict[str, TopologyDescriptor]:
        return {t.kind: t for t in self.topologies}

    def topology(self, kind: str) -> TopologyDescriptor:
        try:
            return self.topology_map[kind]
        except KeyError:
            known = ", ".join(t.kind for t in self.topologies)
            raise ConfigError([f"unknown topology kind {kind!r} (catalog has: {known})"]) from None


def select_mmc_device(catalog: Catalog, m: float) -> DeviceModel:
    return catalog.mmc_device_table.select(m)


def select_dcdc_device(catalog: Catalog, m: float) -> DeviceModel:
    return catalog.dcdc_device_table.select(m)
