"""
Run configuration: shipped defaults <- user TOML file <- command-line flags.

Everything is validated up front and all problems are reported together.
"""

from __future__ import annotations

import hashlib
import logging
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

import toml

from boostpet.catalog.base import Catalog
from boostpet.catalog.loader import merge_document, parse_catalog, read_document
from boostpet.engine.evaluator import CostVolumeCoefficients
from boostpet.errors import ConfigError
from boostpet.system import SystemSpec

log = logging.getLogger(__name__)

OUTPUT_FORMATS = ("csv", "svg")


@dataclass(frozen=True)
class SweepSettings:
    m_lo: float
    m_hi: float
    step: float
    topologies: Tuple[str, ...]


@dataclass(frozen=True)
class OutputSettings:
    directory: Path
    formats: Tuple[str, ...]


@dataclass(frozen=True)
class RunConfig:
    system: SystemSpec
    catalog: Catalog
    coefficients: CostVolumeCoefficients
    sweep: SweepSettings
    output: OutputSettings
    config_hash: str


def _typed_section(cls, section: str, values: Dict[str, Any], problems: List[str]) -> Dict[str, Any]:
    """Coerce a flat TOML table onto a dataclass' fields, noting bad keys/values."""
    kinds = {f.name: f.type for f in fields(cls)}
    out: Dict[str, Any] = {}
    for key, value in values.items():
        if key not in kinds:
            problems.append(f"[{section}] unknown key {key!r}")
            continue
        try:
            if kinds[key] in ("int", int):
                if float(value) != int(value):
                    raise ValueError("expected an integer")
                out[key] = int(value)
            else:
                out[key] = float(value)
        except (TypeError, ValueError) as exc:
            problems.append(f"[{section}] {key} = {value!r}: {exc}")
    return out


def _sweep_settings(values: Dict[str, Any], topologies: List[str], problems: List[str]) -> Optional[SweepSettings]:
    unknown = set(values) - {"m_lo", "m_hi", "step", "topologies"}
    problems.extend(f"[sweep] unknown key {k!r}" for k in sorted(unknown))
    try:
        m_lo, m_hi, step = float(values["m_lo"]), float(values["m_hi"]), float(values["step"])
    except (KeyError, TypeError, ValueError) as exc:
        problems.append(f"[sweep] m_lo, m_hi and step must be numbers ({exc})")
        return None

    kinds = values.get("topologies", [])
    if isinstance(kinds, str):
        kinds = [kinds]
    if not kinds:
        problems.append("[sweep] topologies must name at least one topology")
    for kind in kinds:
        if kind not in topologies:
            problems.append(f"[sweep] unknown topology {kind!r}")
    if not m_lo > 0:
        problems.append("[sweep] m_lo must be > 0")
    if m_hi < m_lo:
        problems.append("[sweep] m_hi must be >= m_lo")
    if not step > 0:
        problems.append("[sweep] step must be > 0")
    return SweepSettings(m_lo, m_hi, step, tuple(kinds))


def _output_settings(values: Dict[str, Any], problems: List[str]) -> OutputSettings:
    unknown = set(values) - {"directory", "formats"}
    problems.extend(f"[output] unknown key {k!r}" for k in sorted(unknown))
    formats = values.get("formats", list(OUTPUT_FORMATS))
    if isinstance(formats, str):
        formats = [f.strip() for f in formats.split(",") if f.strip()]
    for fmt in formats:
        if fmt not in OUTPUT_FORMATS:
            problems.append(f"[output] unknown format {fmt!r} (expected a subset of csv,svg)")
    return OutputSettings(Path(str(values.get("directory", "."))), tuple(formats))


def _overlay(doc: Dict[str, Any], overrides: Dict[str, Dict[str, Any]]) -> Dict[str, Any]:
    for section, values in overrides.items():
        doc.setdefault(section, {})
        if isinstance(doc[section], dict):
            doc[section].update({k: v for k, v in values.items() if v is not None})
    return doc


def load_run_config(
    path: Optional[Path] = None,
    overrides: Optional[Dict[str, Dict[str, Any]]] = None,
) -> RunConfig:
    """Build a validated RunConfig. `overrides` are per-section values from flags."""
    user = _overlay(read_document(path), overrides or {})
    doc, problems = merge_document(user)

    catalog, catalog_problems = parse_catalog(doc)
    problems.extend(catalog_problems)

    system = SystemSpec(**_typed_section(SystemSpec, "system", doc.get("system", {}), problems))
    problems.extend(system.problems())

    coefficients = CostVolumeCoefficients(
        **_typed_section(CostVolumeCoefficients, "coefficients", doc.get("coefficients", {}), problems)
    )
    problems.extend(coefficients.problems())

    known_kinds = [row.get("kind") for row in doc.get("topology", [])]
    sweep = _sweep_settings(doc.get("sweep", {}), known_kinds, problems)
    output = _output_settings(doc.get("output", {}), problems)

    if problems:
        raise ConfigError(problems)

    # where and how results are written does not change them
    canonical = toml.dumps({k: v for k, v in doc.items() if k != "output"}).encode("utf-8")
    config_hash = hashlib.sha256(canonical).hexdigest()[:16]
    log.debug("run config %s loaded (source: %s)", config_hash, path or "defaults")
    return RunConfig(system, catalog, coefficients, sweep, output, config_hash)
