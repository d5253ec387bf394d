"""Readers for the producer's documented file formats.

This package talks to the modeling toolkit only through its published
outputs: CSV grids with JSON metadata sidecars, feasibility CSVs, and JSON
reports. Nothing here imports the producer.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

SUPPORTED_SCHEMA_VERSION = 1


class SchemaError(ValueError):
    """Input does not match the supported sidecar/report schema."""


def load_json(path: str | Path) -> dict:
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise SchemaError(f"{path}: expected a JSON object")
    return data


def load_sidecar(path: str | Path) -> dict:
    meta = load_json(path)
    version = meta.get("schema_version")
    if version != SUPPORTED_SCHEMA_VERSION:
        raise SchemaError(
            f"{path}: schema version {version!r} not supported "
            f"(need {SUPPORTED_SCHEMA_VERSION})"
        )
    return meta


def load_grid(csv_path: str | Path):
    """Load a far-field grid CSV plus its sidecar.

    Returns (theta_deg, phi_rad, intensity, metadata).
    """
    csv_path = Path(csv_path)
    sidecar = csv_path.with_suffix(".json")
    if not sidecar.exists():
        raise SchemaError(f"missing metadata sidecar {sidecar}")
    meta = load_sidecar(sidecar)
    thetas, phis, values = [], [], []
    with open(csv_path, newline="") as handle:
        reader = csv.DictReader(handle)
        if reader.fieldnames != ["theta_deg", "phi_rad", "intensity"]:
            raise SchemaError(f"{csv_path}: unexpected columns {reader.fieldnames}")
        for row in reader:
            thetas.append(float(row["theta_deg"]))
            phis.append(float(row["phi_rad"]))
            values.append(float(row["intensity"]))
    theta = np.array(sorted(set(thetas)))
    phi = np.array(sorted(set(phis)))
    if theta.size * phi.size != len(values):
        raise SchemaError(f"{csv_path}: grid is not rectangular")
    intensity = np.array(values).reshape(theta.size, phi.size)
    return theta, phi, intensity, meta


def load_feasibility(csv_path: str | Path):
    """Load a feasibility CSV plus its sidecar; returns (rows, metadata)."""
    csv_path = Path(csv_path)
    meta = load_sidecar(csv_path.with_suffix(".json"))
    rows = []
    with open(csv_path, newline="") as handle:
        reader = csv.DictReader(handle)
        expected = ["N", "ell", "m_primes", "radiative", "eta_pump",
                    "delta_m_pm2"]
        if reader.fieldnames != expected:
            raise SchemaError(f"{csv_path}: unexpected columns {reader.fieldnames}")
        for row in reader:
            rows.append({
                "N": int(row["N"]),
                "ell": int(row["ell"]),
                "m_primes": [int(v) for v in row["m_primes"].split(";")],
                "radiative": row["radiative"] == "true",
                "eta_pump": float(row["eta_pump"]),
                "delta_m_pm2": row["delta_m_pm2"] == "true",
            })
    return rows, meta


def load_budget(path: str | Path) -> dict:
    report = load_json(path)
    if report.get("kind") != "budget":
        raise SchemaError(f"{path}: expected a budget report")
    return report


def load_manifest(path: str | Path) -> dict:
    manifest = load_json(path)
    if manifest.get("kind") != "sweep_manifest":
        raise SchemaError(f"{path}: expected a sweep manifest")
    return manifest
