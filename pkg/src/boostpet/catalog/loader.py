"""
TOML config reading and catalog parsing.

User documents are merged over data/defaults.toml:
  - plain sections ([system], [coefficients], [sweep], [output]) merge per key
  - [[mmc_device]] / [[dcdc_device]] rows merge by name, [[topology]] rows by
    kind; a row with a new name/kind is added
  - [catalog] replace_device_tables = true drops the default device rows
"""

from __future__ import annotations

import copy
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

import toml

from boostpet.catalog.base import Catalog
from boostpet.catalog.devices import DeviceModel, DeviceRange, DeviceTable, table_problems
from boostpet.catalog.topologies import TopologyDescriptor
from boostpet.errors import ConfigError

log = logging.getLogger(__name__)

DEFAULTS_PATH = Path(__file__).resolve().parent.parent / "data" / "defaults.toml"

KNOWN_SECTIONS = (
    "system", "mmc_device", "dcdc_device", "topology",
    "coefficients", "sweep", "output", "catalog",
)

# config key -> DeviceModel field
_DEVICE_KEYS = {
    "name": "name",
    "rated_voltage_v": "rated_voltage",
    "rated_current_a": "rated_current",
    "v0_v": "v0",
    "r_on_ohm": "r_on",
    "esw_j": "esw",
    "i_ref_a": "i_ref",
    "v_ref_v": "v_ref",
    "cost": "unit_cost",
    "volume_l": "unit_volume",
}

_TOPOLOGY_KEYS = (
    "kind", "m_min", "m_max", "fbsm_rule", "branch_igbt_count", "branch_cost",
    "branch_volume", "branch_loss_fraction", "capacitor_reduction_factor",
    "switching_reduction_factor",
)

ConfigSource = Union[None, str, Path, Dict[str, Any]]


def read_document(source: ConfigSource) -> Dict[str, Any]:
    """Parse a config path (or an already-parsed dict). None means an empty document."""
    if source is None:
        return {}
    if isinstance(source, dict):
        return copy.deepcopy(source)
    path = Path(source)
    log.debug("reading config from %s", path)
    try:
        return toml.load(path)
    except (OSError, toml.TomlDecodeError) as exc:
        raise ConfigError([f"cannot read config {source}: {exc}"]) from exc


def read_defaults() -> Dict[str, Any]:
    return toml.load(DEFAULTS_PATH)


def _merge_rows(default_rows: List[dict], user_rows: List[dict], key: str) -> List[dict]:
    merged = [dict(r) for r in default_rows]
    index = {r.get(key): i for i, r in enumerate(merged)}
    for row in user_rows:
        ident = row.get(key)
        if ident in index:
            merged[index[ident]].update(row)
        else:
            index[ident] = len(merged)
            merged.append(dict(row))
    return merged


def merge_document(user: Dict[str, Any]) -> Tuple[Dict[str, Any], List[str]]:
    """Overlay a user document on the shipped defaults."""
    problems = [f"unknown config section [{name}]" for name in user if name not in KNOWN_SECTIONS]
    doc = read_defaults()

    for section in ("system", "coefficients", "sweep", "output"):
        if section in user:
            if not isinstance(user[section], dict):
                problems.append(f"[{section}] must be a table")
                continue
            doc[section].update(user[section])

    replace = bool(user.get("catalog", {}).get("replace_device_tables", False))
    for section in ("mmc_device", "dcdc_device"):
        rows = user.get(section)
        if rows is None:
            continue
        if not isinstance(rows, list):
            problems.append(f"[[{section}]] must be an array of tables")
            continue
        doc[section] = [dict(r) for r in rows] if replace else _merge_rows(doc[section], rows, "name")

    if "topology" in user:
        if isinstance(user["topology"], list):
            doc["topology"] = _merge_rows(doc["topology"], user["topology"], "kind")
        else:
            problems.append("[[topology]] must be an array of tables")

    return doc, problems


def _parse_device_rows(section: str, rows: List[dict]) -> Tuple[Optional[DeviceTable], List[str]]:
    problems: List[str] = []
    parsed: List[DeviceRange] = []
    for i, row in enumerate(rows):
        unknown = set(row) - set(_DEVICE_KEYS) - {"m_low", "m_high"}
        if unknown:
            problems.append(f"[[{section}]] row {i}: unknown keys {sorted(unknown)}")
        missing = [k for k in ("m_low", "m_high", *_DEVICE_KEYS) if k not in row]
        if missing:
            problems.append(f"[[{section}]] row {i} ({row.get('name', '?')}): missing {missing}")
            continue
        try:
            device = DeviceModel(**{
                field: (str(row[key]) if key == "name" else float(row[key]))
                for key, field in _DEVICE_KEYS.items()
            })
            parsed.append(DeviceRange(float(row["m_low"]), float(row["m_high"]), device))
        except (TypeError, ValueError) as exc:
            problems.append(f"[[{section}]] row {i}: {exc}")

    parsed.sort(key=lambda r: r.m_low)
    table_name = section.replace("_device", "")
    problems.extend(table_problems(table_name, parsed) if not problems else [])
    if problems:
        return None, problems
    return DeviceTable(table_name, tuple(parsed)), []


def _parse_topologies(rows: List[dict]) -> Tuple[List[TopologyDescriptor], List[str]]:
    problems: List[str] = []
    out: List[TopologyDescriptor] = []
    for i, row in enumerate(rows):
        unknown = set(row) - set(_TOPOLOGY_KEYS)
        if unknown:
            problems.append(f"[[topology]] row {i}: unknown keys {sorted(unknown)}")
            continue
        try:
            topo = TopologyDescriptor(
                kind=str(row["kind"]),
                m_min=float(row["m_min"]),
                m_max=float(row["m_max"]),
                fbsm_rule=str(row["fbsm_rule"]),
                branch_igbt_count=int(row.get("branch_igbt_count", 0)),
                branch_cost=float(row.get("branch_cost", 0.0)),
                branch_volume=float(row.get("branch_volume", 0.0)),
                branch_loss_fraction=float(row.get("branch_loss_fraction", 0.0)),
                capacitor_reduction_factor=float(row.get("capacitor_reduction_factor", 1.0)),
                switching_reduction_factor=float(row.get("switching_reduction_factor", 1.0)),
            )
        except KeyError as exc:
            problems.append(f"[[topology]] row {i}: missing key {exc.args[0]}")
            continue
        except (TypeError, ValueError) as exc:
            problems.append(f"[[topology]] row {i}: {exc}")
            continue
        problems.extend(topo.problems())
        out.append(topo)
    return out, problems


def parse_catalog(doc: Dict[str, Any]) -> Tuple[Optional[Catalog], List[str]]:
    """Build a Catalog from a merged document, collecting every problem."""
    mmc, mmc_problems = _parse_device_rows("mmc_device", doc.get("mmc_device", []))
    dcdc, dcdc_problems = _parse_device_rows("dcdc_device", doc.get("dcdc_device", []))
    topologies, topo_problems = _parse_topologies(doc.get("topology", []))

    problems = mmc_problems + dcdc_problems + topo_problems
    if problems:
        return None, problems
    return Catalog(mmc, dcdc, tuple(topologies)), []


def load_catalog(config_source: ConfigSource = None) -> Catalog:
    """Load the catalog from a TOML path or parsed dict (None = shipped defaults)."""
    doc, problems = merge_document(read_document(config_source))
    catalog, catalog_problems = parse_catalog(doc)
    problems.extend(catalog_problems)
    if problems:
        raise ConfigError(problems)
    return catalog
