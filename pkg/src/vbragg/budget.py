"""End-to-end efficiency chain, Q-requirement inversion, and noise floors."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .constants import BOLTZMANN_K, C_LIGHT, PLANCK_H
from .errors import ValidationError

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class EfficiencyChain:
    """Multiplicative budget: emission x conversion x collection."""

    eta_zpl: float
    eta_dfg: float
    eta_spatial: float

    def __post_init__(self):
        for name in ("eta_zpl", "eta_dfg", "eta_spatial"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValidationError(f"{name}={value} must lie in [0, 1]")

    @property
    def eta_tot(self) -> float:
        return self.eta_zpl * self.eta_dfg * self.eta_spatial


@dataclass(frozen=True)
class NoiseReport:
    """Parasitic-channel estimates at the operating point."""

    raman_fraction: float
    leakage_power_w: float
    leakage_photon_rate_hz: float
    thermal_log10: float
    thermal_occupancy: float

    def __post_init__(self):
        if min(self.raman_fraction, self.leakage_power_w,
               self.leakage_photon_rate_hz, self.thermal_occupancy) < 0:
            raise ValidationError("noise figures must be non-negative")


def efficiency_chain(eta_zpl: float, eta_dfg: float,
                     eta_spatial: float) -> EfficiencyChain:
    return EfficiencyChain(eta_zpl, eta_dfg, eta_spatial)


def required_q(target_eta: float, g_eff: float, lambda1_nm: float) -> float:
    """Smallest Q whose cavity lifetime reaches the target conversion.

    Inverts eta = sin^2(g_eff * Q/omega1) on the principal branch:
    Q = omega1 * arcsin(sqrt(eta)) / g_eff.
    """
    if not 0.0 < target_eta < 1.0:
        raise ValidationError(f"target efficiency {target_eta} unreachable; need (0, 1)")
    if g_eff <= 0 or lambda1_nm <= 0:
        raise ValidationError("g_eff and lambda1 must be positive")
    omega1 = TWO_PI * C_LIGHT / (lambda1_nm * 1e-9)
    return omega1 * math.asin(math.sqrt(target_eta)) / g_eff


def raman_fraction(gain_cm_per_gw: float, intensity_w_per_cm2: float,
                   length_um: float) -> float:
    """Spontaneous Raman conversion fraction g_R * I * L."""
    if min(gain_cm_per_gw, intensity_w_per_cm2, length_um) < 0:
        raise ValidationError("inputs must be non-negative")
    gain_m_per_w = gain_cm_per_gw * 1e-2 / 1e9
    intensity_w_per_m2 = intensity_w_per_cm2 * 1e4
    return gain_m_per_w * intensity_w_per_m2 * length_um * 1e-6


def pump_leakage(p_w: float, extinction_db: float,
                 wavelength_nm: float) -> tuple[float, float]:
    """Residual pump after filtering: (power in W, photon rate in 1/s)."""
    if p_w < 0 or extinction_db < 0 or wavelength_nm <= 0:
        raise ValidationError("invalid leakage inputs")
    residual = p_w * 10.0 ** (-extinction_db / 10.0)
    photon_energy = PLANCK_H * C_LIGHT / (wavelength_nm * 1e-9)
    return residual, residual / photon_energy


def thermal_occupancy(wavelength_nm: float, temperature_k: float) -> tuple[float, float]:
    """Boltzmann occupancy exp(-h c / (lambda k_B T)) as (log10, clamped linear).

    Evaluated in log space: at optical frequencies and cryogenic temperatures
    the linear value underflows, so the log10 figure is the usable one.
    """
    if temperature_k <= 0 or wavelength_nm <= 0:
        raise ValidationError("wavelength and temperature must be positive")
    exponent = -PLANCK_H * C_LIGHT / (wavelength_nm * 1e-9 * BOLTZMANN_K * temperature_k)
    log10_n = exponent / math.log(10.0)
    linear = math.exp(exponent) if exponent > -700 else 0.0
    return log10_n, linear
