"""Tests for CSV, TOML and SVG artifacts."""

import xml.etree.ElementTree as ET

import pandas as pd
import pytest
import toml

from boostpet.catalog.loader import load_catalog
from boostpet.engine.calibration import ResidualRow
from boostpet.engine.evaluator import CostVolumeCoefficients
from boostpet.engine.sweep import pareto_front, sweep
from boostpet.reports.charts import CHARTS, write_charts
from boostpet.reports.config import load_run_config
from boostpet.reports.tables import (
    MANIFEST_NAME,
    SWEEP_COLUMNS,
    write_coefficients,
    write_infeasible_csv,
    write_manifest,
    write_pareto_csv,
    write_residuals_csv,
    write_sweep_csv,
)
from boostpet.system import SystemSpec

SPEC = SystemSpec()
CATALOG = load_catalog()
COEFFS = CostVolumeCoefficients()


@pytest.fixture(scope="module")
def results():
    return [
        sweep(SPEC, CATALOG.topology(kind), CATALOG, COEFFS, 1.0, 3.0, 0.25)
        for kind in ("hybrid-traditional", "hybrid-sbb", "full-bridge")
    ]


def test_sweep_csv_layout(results, tmp_path):
    path = write_sweep_csv(results[0], tmp_path)
    assert path.name == "sweep_hybrid-traditional.csv"
    text = path.read_text()
    assert text.splitlines()[0] == ",".join(SWEEP_COLUMNS)
    assert "\r" not in text
    frame = pd.read_csv(path)
    assert list(frame["m"]) == [1.25, 1.5, 1.75, 2.0]
    assert (frame["topology"] == "hybrid-traditional").all()


def test_sweep_csv_is_byte_identical(results, tmp_path):
    first = write_sweep_csv(results[1], tmp_path / "a").read_bytes()
    second = write_sweep_csv(results[1], tmp_path / "b").read_bytes()
    assert first == second


def test_infeasible_csv(results, tmp_path):
    frame = pd.read_csv(write_infeasible_csv(results, tmp_path))
    assert list(frame.columns) == ["topology", "m", "reason"]
    trad = frame[frame["topology"] == "hybrid-traditional"]
    assert list(trad["m"]) == [1.0, 2.25, 2.5, 2.75, 3.0]
    assert (frame["topology"] != "full-bridge").all()


def test_pareto_csv(results, tmp_path):
    front = pareto_front(results)
    frame = pd.read_csv(write_pareto_csv(front, tmp_path))
    assert list(frame.columns) == ["topology", "m", "total_cost", "total_volume", "loss_total_w"]
    assert len(frame) == len(front)


def test_residuals_csv(tmp_path):
    rows = [ResidualRow(2.0, "total_cost_ratio", 0.8, 0.75, "hybrid-sbb")]
    frame = pd.read_csv(write_residuals_csv(rows, tmp_path))
    assert list(frame.columns) == ["m", "metric", "target", "model", "residual"]
    assert frame["residual"][0] == pytest.approx(-0.05)


def test_coefficients_file_loads_as_config(tmp_path):
    path = write_coefficients(COEFFS.scaled(cost=2.0), tmp_path)
    assert set(toml.load(path)["coefficients"]) == set(COEFFS.as_dict())
    config = load_run_config(path)
    assert config.coefficients.tx_total_cost == pytest.approx(2 * COEFFS.tx_total_cost)


def test_manifest(tmp_path):
    artifacts = [tmp_path / "sweep_full-bridge.csv", tmp_path / "fig5_volume.svg"]
    frame = pd.read_csv(write_manifest(tmp_path, "sweep", "abc123", "1:2:0.5", artifacts), dtype=str)
    assert (tmp_path / MANIFEST_NAME).exists()
    assert list(frame["field"]) == ["command", "config_hash", "grid", "artifact", "artifact"]
    assert list(frame["value"]) == ["sweep", "abc123", "1:2:0.5", "sweep_full-bridge.csv", "fig5_volume.svg"]


def test_charts_are_well_formed_svg(results, tmp_path):
    paths = write_charts(results, tmp_path)
    assert [p.name for p in paths] == [name for name, *_ in CHARTS]
    for path in paths:
        root = ET.parse(path).getroot()
        assert root.tag.endswith("svg")


def test_charts_are_deterministic(results, tmp_path):
    first = [p.read_bytes() for p in write_charts(results, tmp_path / "a")]
    second = [p.read_bytes() for p in write_charts(results, tmp_path / "b")]
    assert first == second


def test_chart_skips_empty_sweeps(tmp_path):
    empty = sweep(SPEC, CATALOG.topology("half-bridge"), CATALOG, COEFFS, 2.0, 3.0, 0.5)
    assert empty.empty
    paths = write_charts([empty], tmp_path)
    assert all(p.exists() for p in paths)
