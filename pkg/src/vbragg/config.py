"""Scenario configuration: strict schema, explicit units, YAML front end.

Silent typos in physics configs are the dominant failure mode, so unknown
keys are hard errors and every numeric key carries its unit in the name.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from pathlib import Path

import yaml

from .errors import ValidationError
from .farfield import GridSpec
from .selection import ResonatorSpec, WGMMode


@dataclass(frozen=True)
class PumpConfig:
    sites: int = 23
    wavelength_nm: float = 1623.0
    power_mw: float = 45.0
    waist_um: float = 0.6
    annulus_radius_um: float = 1.3
    input_helicity: int = 1
    qplate_charge: int = 0

    def __post_init__(self):
        if self.sites < 1:
            raise ValidationError("pump.sites must be >= 1")
        for name in ("wavelength_nm", "power_mw", "waist_um", "annulus_radius_um"):
            if getattr(self, name) <= 0:
                raise ValidationError(f"pump.{name} must be positive")


@dataclass(frozen=True)
class HardwareConfig:
    pixel_pitch_um: float = 12.5
    demagnification: float = 40.0
    focal_length_mm: float = 1.5
    na_cap: float = 0.95
    max_pupil_mm: float = 6.0
    refresh_hz: float = 60.0


@dataclass(frozen=True)
class ChainConfig:
    lambda_rate: float = 2.3e2          # s^-1 sqrt(m^2/W)
    eta_zpl: float = 0.99
    eta_spatial: float = 0.70
    target_eta_dfg: float = 0.10        # for the Q-requirement inversion
    raman_gain_cm_per_gw: float = 5.0
    extinction_db: float = 130.0
    temperature_k: float = 5.0
    steering_pitch_um: float = 10.0


@dataclass(frozen=True)
class MaterialsConfig:
    d22_m_per_v: float = 2.1e-12
    d31_m_per_v: float = -4.3e-12
    chi_iso_m_per_v: float = 4.5e-11
    table_path: str | None = None


@dataclass(frozen=True)
class WriteInConfig:
    """Separate geometry for the SFG write-in scenario."""

    radius_um: float = 1.66
    wavelength_nm: float = 737.0


@dataclass(frozen=True)
class FeasibilityConfig:
    n_eff: float = 1.7
    wavelength_nm: float = 736.0
    na: float = 0.95
    n_min: int = 15
    n_max: int = 30
    ell_min: int = -2
    ell_max: int = 2


@dataclass(frozen=True)
class Scenario:
    resonator: ResonatorSpec = field(
        default_factory=lambda: ResonatorSpec(radius_um=1.6))
    mode: WGMMode = field(default_factory=lambda: WGMMode(azimuthal_order=21))
    pump: PumpConfig = field(default_factory=PumpConfig)
    hardware: HardwareConfig = field(default_factory=HardwareConfig)
    chain: ChainConfig = field(default_factory=ChainConfig)
    materials: MaterialsConfig = field(default_factory=MaterialsConfig)
    grid: GridSpec = field(default_factory=GridSpec)
    writein: WriteInConfig = field(default_factory=WriteInConfig)
    feasibility: FeasibilityConfig = field(default_factory=FeasibilityConfig)
    seed: int = 1234


# Built-in scenario mirroring the reference device stack; selectable by name
# so nothing needs an external file.
REFERENCE_SCENARIO = Scenario()

_SECTIONS = {
    "resonator": ResonatorSpec,
    "mode": WGMMode,
    "pump": PumpConfig,
    "hardware": HardwareConfig,
    "chain": ChainConfig,
    "materials": MaterialsConfig,
    "grid": GridSpec,
    "writein": WriteInConfig,
    "feasibility": FeasibilityConfig,
}


def scenario_to_dict(sc: Scenario) -> dict:
    return dataclasses.asdict(sc)


def _coerce(value, target_type, path: str):
    if value is None and target_type is type(None):
        return None
    if target_type is int:
        if isinstance(value, bool) or not isinstance(value, int):
            raise ValidationError(f"{path}: expected an integer, got {value!r}")
        return value
    if target_type is float:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ValidationError(f"{path}: expected a number, got {value!r}")
        return float(value)
    return value


def _build_section(cls, data: dict, path: str):
    if not isinstance(data, dict):
        raise ValidationError(f"{path}: expected a mapping, got {type(data).__name__}")
    fields = {f.name: f for f in dataclasses.fields(cls)}
    unknown = set(data) - set(fields)
    if unknown:
        raise ValidationError(
            f"{path}: unknown keys {sorted(unknown)}; allowed: {sorted(fields)}"
        )
    kwargs = {}
    for name, value in data.items():
        ftype = fields[name].type
        base = int if "int" in str(ftype) else (
            float if "float" in str(ftype) else None)
        if base is not None and value is not None:
            value = _coerce(value, base, f"{path}.{name}")
        kwargs[name] = value
    return cls(**kwargs)


def scenario_from_dict(data: dict) -> Scenario:
    """Build a Scenario from a nested mapping; unknown keys are errors."""
    if not isinstance(data, dict):
        raise ValidationError("top level of the config must be a mapping")
    unknown = set(data) - set(_SECTIONS) - {"seed"}
    if unknown:
        raise ValidationError(
            f"unknown top-level keys {sorted(unknown)}; "
            f"allowed: {sorted(_SECTIONS) + ['seed']}"
        )
    kwargs = {}
    for name, cls in _SECTIONS.items():
        if name in data:
            kwargs[name] = _build_section(cls, data[name], name)
    if "seed" in data:
        kwargs["seed"] = _coerce(data["seed"], int, "seed")
    return Scenario(**kwargs)


def load_scenario(source: str | Path | None) -> Scenario:
    """Load a scenario from a YAML file, or the built-in one by name."""
    if source is None or str(source) == "reference":
        return REFERENCE_SCENARIO
    path = Path(source)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ValidationError(f"cannot read config {path}: {exc}") from exc
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ValidationError(f"{path}: invalid YAML: {exc}") from exc
    if data is None:
        data = {}
    return scenario_from_dict(data)
