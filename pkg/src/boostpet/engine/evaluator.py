"""
Cost, volume and loss aggregation for one design, normalized against the
half-bridge MMC at m = 1.

Sizing produces a BillOfMaterials that does not depend on the cost/volume
coefficients; pricing it is a cheap linear step, which is what lets
calibration re-price the same designs thousands of times.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, fields
from typing import Dict, List, Optional

from boostpet.catalog.base import Catalog
from boostpet.catalog.topologies import HALF_BRIDGE, TopologyDescriptor
from boostpet.engine.dcdc_sizing import DcdcDesign, evaluate_dcdc
from boostpet.engine.losses import LossBreakdown, total_losses
from boostpet.engine.mmc_sizing import MmcDesign, evaluate_mmc
from boostpet.engine.operating_point import solve_operating_point
from boostpet.system import OperatingPoint, SystemSpec

BASELINE_M = 1.0


@dataclass(frozen=True)
class CostVolumeCoefficients:
    cap_cost_per_farad: float = 582.0
    cap_volume_per_farad: float = 7430.0
    igbt_cost_scale: float = 1.0
    igbt_volume_scale: float = 1.0
    tx_total_cost: float = 110.8
    tx_volume_per_unit: float = 3.0
    diode_cost: float = 2.45
    diode_volume: float = 0.1
    tx_volume_exponent: float = 0.0

    def problems(self) -> List[str]:
        return [
            f"coefficients.{f.name} must be >= 0"
            for f in fields(self)
            if f.name != "tx_volume_exponent" and getattr(self, f.name) < 0
        ]

    def scaled(self, cost: float = 1.0, volume: float = 1.0) -> "CostVolumeCoefficients":
        """Copy with every cost coefficient multiplied by `cost`, volume ones by `volume`."""
        return CostVolumeCoefficients(
            cap_cost_per_farad=self.cap_cost_per_farad * cost,
            cap_volume_per_farad=self.cap_volume_per_farad * volume,
            igbt_cost_scale=self.igbt_cost_scale * cost,
            igbt_volume_scale=self.igbt_volume_scale * volume,
            tx_total_cost=self.tx_total_cost * cost,
            tx_volume_per_unit=self.tx_volume_per_unit * volume,
            diode_cost=self.diode_cost * cost,
            diode_volume=self.diode_volume * volume,
            tx_volume_exponent=self.tx_volume_exponent,
        )

    def as_dict(self) -> Dict[str, float]:
        return asdict(self)


@dataclass(frozen=True)
class BillOfMaterials:
    """Coefficient-independent quantities that pricing multiplies out."""

    total_capacitance: float
    mmc_igbt_count: int
    mmc_igbt_cost: float
    mmc_igbt_volume: float
    branch_cost: float
    branch_volume: float
    dcdc_igbt_count: int
    dcdc_igbt_cost: float
    dcdc_igbt_volume: float
    dcdc_diode_count: int
    tx_units: int
    tx_power_fraction: float       # per-unit transformer power / rated power


@dataclass(frozen=True)
class StageTotals:
    mmc_cost: float
    mmc_volume: float
    dcdc_cost: float
    dcdc_volume: float

    @property
    def total_cost(self) -> float:
        return self.mmc_cost + self.dcdc_cost

    @property
    def total_volume(self) -> float:
        return self.mmc_volume + self.dcdc_volume


@dataclass(frozen=True)
class NormalizedRatios:
    mmc_cost_ratio: float
    mmc_volume_ratio: float
    dcdc_cost_ratio: float
    dcdc_volume_ratio: float
    total_cost_ratio: float
    total_volume_ratio: float

    def as_dict(self) -> Dict[str, float]:
        return asdict(self)


RATIO_METRICS = tuple(f.name for f in fields(NormalizedRatios))


@dataclass(frozen=True)
class DesignPoint:
    """A sized but unpriced design."""

    topology: TopologyDescriptor
    op: OperatingPoint
    mmc: MmcDesign
    dcdc: DcdcDesign
    bom: BillOfMaterials


@dataclass(frozen=True)
class DesignEvaluation:
    m: float
    topology: str
    op: OperatingPoint
    mmc: MmcDesign
    dcdc: DcdcDesign
    mmc_cost: float
    mmc_volume: float
    dcdc_cost: float
    dcdc_volume: float
    total_cost: float
    total_volume: float
    losses: LossBreakdown
    normalized: NormalizedRatios
    rated_power: float

    @property
    def power_density(self) -> float:
        """Rated power per liter of installed equipment."""
        return self.rated_power / self.total_volume if self.total_volume else 0.0


def bill_of_materials(spec: SystemSpec, topo: TopologyDescriptor, mmc: MmcDesign, dcdc: DcdcDesign) -> BillOfMaterials:
    return BillOfMaterials(
        total_capacitance=mmc.total_capacitance,
        mmc_igbt_count=mmc.igbt_count_total,
        mmc_igbt_cost=mmc.device.unit_cost,
        mmc_igbt_volume=mmc.device.unit_volume,
        branch_cost=topo.branch_cost,
        branch_volume=topo.branch_volume,
        dcdc_igbt_count=dcdc.igbt_count_total,
        dcdc_igbt_cost=dcdc.device.unit_cost,
        dcdc_igbt_volume=dcdc.device.unit_volume,
        dcdc_diode_count=dcdc.diode_count_total,
        tx_units=dcdc.unit_count,
        tx_power_fraction=dcdc.tx_per_unit_power / spec.rated_power if spec.rated_power else 0.0,
    )


def design_point(spec: SystemSpec, topo: TopologyDescriptor, m: float, catalog: Catalog) -> DesignPoint:
    """Solve and size both stages. Raises FeasibilityError / OutOfRangeError."""
    op = solve_operating_point(spec, m)
    mmc = evaluate_mmc(spec, op, topo, catalog)
    dcdc = evaluate_dcdc(spec, op, catalog)
    return DesignPoint(topo, op, mmc, dcdc, bill_of_materials(spec, topo, mmc, dcdc))


def price(bom: BillOfMaterials, coeffs: CostVolumeCoefficients) -> StageTotals:
    """Branch passives are quoted in device units and scale with the IGBTs."""
    if coeffs.tx_volume_exponent == 0:
        tx_scale = 1.0
    else:
        tx_scale = bom.tx_power_fraction ** coeffs.tx_volume_exponent

    return StageTotals(
        mmc_cost=(
            coeffs.cap_cost_per_farad * bom.total_capacitance
            + coeffs.igbt_cost_scale * (bom.mmc_igbt_count * bom.mmc_igbt_cost + bom.branch_cost)
        ),
        mmc_volume=(
            coeffs.cap_volume_per_farad * bom.total_capacitance
            + coeffs.igbt_volume_scale * (bom.mmc_igbt_count * bom.mmc_igbt_volume + bom.branch_volume)
        ),
        dcdc_cost=(
            coeffs.igbt_cost_scale * bom.dcdc_igbt_count * bom.dcdc_igbt_cost
            + coeffs.diode_cost * bom.dcdc_diode_count
            + coeffs.tx_total_cost
        ),
        dcdc_volume=(
            coeffs.igbt_volume_scale * bom.dcdc_igbt_count * bom.dcdc_igbt_volume
            + coeffs.diode_volume * bom.dcdc_diode_count
            + coeffs.tx_volume_per_unit * bom.tx_units * tx_scale
        ),
    )


def _ratio(value: float, base: float) -> float:
    if base == 0:
        return 1.0 if value == 0 else float("inf")
    return value / base


def normalize(totals: StageTotals, baseline: StageTotals) -> NormalizedRatios:
    return NormalizedRatios(
        mmc_cost_ratio=_ratio(totals.mmc_cost, baseline.mmc_cost),
        mmc_volume_ratio=_ratio(totals.mmc_volume, baseline.mmc_volume),
        dcdc_cost_ratio=_ratio(totals.dcdc_cost, baseline.dcdc_cost),
        dcdc_volume_ratio=_ratio(totals.dcdc_volume, baseline.dcdc_volume),
        total_cost_ratio=_ratio(totals.total_cost, baseline.total_cost),
        total_volume_ratio=_ratio(totals.total_volume, baseline.total_volume),
    )


def baseline_point(spec: SystemSpec, catalog: Catalog) -> DesignPoint:
    return design_point(spec, catalog.topology(HALF_BRIDGE), BASELINE_M, catalog)


def baseline_totals(spec: SystemSpec, catalog: Catalog, coeffs: CostVolumeCoefficients) -> StageTotals:
    return price(baseline_point(spec, catalog).bom, coeffs)


def evaluate_design(
    spec: SystemSpec,
    topo: TopologyDescriptor,
    m: float,
    catalog: Catalog,
    coeffs: CostVolumeCoefficients,
    baseline: Optional[StageTotals] = None,
) -> DesignEvaluation:
    """Full evaluation of one design. Pass `baseline` to skip re-sizing it."""
    point = design_point(spec, topo, m, catalog)
    totals = price(point.bom, coeffs)
    if baseline is None:
        baseline = baseline_totals(spec, catalog, coeffs)

    return DesignEvaluation(
        m=m,
        topology=topo.kind,
        op=point.op,
        mmc=point.mmc,
        dcdc=point.dcdc,
        mmc_cost=totals.mmc_cost,
        mmc_volume=totals.mmc_volume,
        dcdc_cost=totals.dcdc_cost,
        dcdc_volume=totals.dcdc_volume,
        total_cost=totals.total_cost,
        total_volume=totals.total_volume,
        losses=total_losses(point.op, point.mmc, point.dcdc, spec, topo),
        normalized=normalize(totals, baseline),
        rated_power=spec.rated_power,
    )
