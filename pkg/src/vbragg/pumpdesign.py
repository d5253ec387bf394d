"""Pump-hardware feasibility: bandwidth limits, q-plate offload, maps.

The structured pump must deliver tangential spatial frequency m/r0, which
bounds the required numerical aperture; the SLM pixel pitch and the
objective pupil cap what can actually be delivered. These operations
quantify the gap and enumerate which (N, ell) harmonics remain usable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special

from .errors import ValidationError

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class PumpHardware:
    """SLM and relay-optics parameters."""

    pump_wavelength_nm: float = 1623.0
    pixel_pitch_um: float = 12.5
    demagnification: float = 40.0
    focal_length_mm: float = 1.5
    na_cap: float = 0.95
    max_pupil_mm: float = 6.0
    refresh_hz: float = 60.0

    def __post_init__(self):
        for name in ("pump_wavelength_nm", "pixel_pitch_um", "demagnification",
                     "focal_length_mm", "na_cap", "max_pupil_mm", "refresh_hz"):
            if getattr(self, name) <= 0:
                raise ValidationError(f"{name} must be positive")
        if self.na_cap > 1.0:
            raise ValidationError("na_cap cannot exceed 1 for an air objective")

    @property
    def k0_per_um(self) -> float:
        return TWO_PI / (self.pump_wavelength_nm * 1e-3)


@dataclass(frozen=True)
class PumpDesign:
    """One concrete pump configuration."""

    total_charge: int
    qplate_charge: int = 0
    input_helicity: int = +1          # +1 or -1
    annulus_radius_um: float = 1.3
    waist_um: float = 0.6
    p_tot_w: float = 45e-3
    n_sites: int = 23

    def __post_init__(self):
        if self.input_helicity not in (+1, -1):
            raise ValidationError("input_helicity must be +1 or -1")
        if self.annulus_radius_um <= 0 or self.waist_um <= 0:
            raise ValidationError("annulus radius and waist must be positive")

    @property
    def slm_charge(self) -> int:
        """Residual helical charge after q-plate offload, m - 2*sigma*q."""
        return self.total_charge - 2 * self.input_helicity * self.qplate_charge


@dataclass(frozen=True)
class PupilCutoff:
    """Deliverable transverse spatial frequencies, rad/um."""

    k_opt: float
    k_slm: float

    @property
    def k_c(self) -> float:
        return min(self.k_opt, self.k_slm)


@dataclass(frozen=True)
class FeasibilityRecord:
    """One (N, ell) cell of the harmonic feasibility map."""

    n_sites: int
    ell: int
    m_primes: tuple[int, ...]     # output orders ell*N +/- M +/- 2
    radiative: bool
    eta_pump: float
    delta_m_pm2: bool

    def __post_init__(self):
        if not 0.0 <= self.eta_pump <= 1.0:
            raise ValidationError("eta_pump must lie in [0, 1]")


def na_required(m: int, pump_wavelength_nm: float, r0_um: float) -> float:
    """NA needed for helical charge m on an annulus of radius r0."""
    if r0_um <= 0:
        raise ValidationError("r0_um must be positive")
    return abs(m) * pump_wavelength_nm * 1e-3 / (TWO_PI * r0_um)


def pupil_cutoff(hw: PumpHardware) -> PupilCutoff:
    """Optical and SLM sampling cutoffs at the sample plane.

    The demagnified SLM pixel is pitch/D, so the sampling (Nyquist) cutoff is
    pi/(pitch/D); the optical cutoff is k0*NA.
    """
    sample_pixel_um = hw.pixel_pitch_um / hw.demagnification
    return PupilCutoff(
        k_opt=hw.k0_per_um * hw.na_cap,
        k_slm=math.pi / sample_pixel_um,
    )


def qplate_min_charge(m: int, k0_per_um: float, r0_um: float,
                      na_cap: float) -> int:
    """Least q-plate charge bringing the residual ramp within the NA cap."""
    if r0_um <= 0:
        raise ValidationError("r0_um must be positive")
    return max(0, math.ceil((abs(m) - k0_per_um * r0_um * na_cap) / 2.0))


def pump_na_fraction(m: int, r0_um: float, k0_per_um: float, na: float,
                     n_points: int = 4000) -> float:
    """Fraction of the pump harmonic's |J_m|^2 angular spectrum inside NA.

    Power-weighted 2-D angular spectrum: integral of J_m(kappa r0)^2 kappa
    d(kappa) from 0 to k0*NA over the same up to the propagating-wave limit
    k0. Trapezoidal quadrature on >= 2000 points.
    """
    if r0_um <= 0:
        raise ValidationError("r0_um must be positive")
    if not 0.0 <= na <= 1.0:
        raise ValidationError("NA must lie in [0, 1]")
    n_points = max(n_points, 2000)
    kappa = np.linspace(0.0, k0_per_um, n_points)
    weight = special.jv(m, kappa * r0_um) ** 2 * kappa
    denom = float(np.trapezoid(weight, kappa))
    if denom == 0.0:
        return 0.0
    inside = kappa <= na * k0_per_um
    numer = float(np.trapezoid(weight[inside], kappa[inside]))
    return min(numer / denom, 1.0)


def output_orders(M: int, N: int, ell: int) -> tuple[int, ...]:
    """The four output orders ell*N +/- M +/- 2."""
    return (ell * N + M + 2, ell * N + M - 2,
            ell * N - M + 2, ell * N - M - 2)


def _collectible_pair(M: int, N: int, ell: int) -> tuple[int, int]:
    """The momentum-balanced order pair relevant for collection at (N, ell).

    Of the two +/-M branches, the one with the smaller residual |ell*N -+ M|
    carries the collectible harmonics; the other lies far outside any pupil.
    """
    minus = (ell * N - M + 2, ell * N - M - 2)
    plus = (ell * N + M + 2, ell * N + M - 2)
    if max(abs(v) for v in minus) <= max(abs(v) for v in plus):
        return minus
    return plus


def feasibility_map(M: int, hw: PumpHardware, *, radius_um: float,
                    wavelength_nm: float, na: float,
                    n_values, ell_values,
                    r0_um: float | None = None) -> list[FeasibilityRecord]:
    """Feasibility of the (N, ell) harmonics for a given mode order M.

    A cell is radiative when both collectible output orders m' satisfy
    |m'|/R < k0*NA with k0 = 2*pi/wavelength. eta_pump is the NA-truncated
    fraction of the |ell|*N pump harmonic; delta_m = +/-2 cells (those with
    an on-axis m' = 0 component) are flagged.
    """
    n_values = list(n_values)
    ell_values = list(ell_values)
    if not n_values or not ell_values:
        raise ValidationError("N and ell ranges must be non-empty")
    bound = TWO_PI / (wavelength_nm * 1e-3) * na * radius_um
    r0 = r0_um if r0_um is not None else radius_um
    records = []
    for n_sites in n_values:
        for ell in ell_values:
            orders = output_orders(M, n_sites, ell)
            pair = _collectible_pair(M, n_sites, ell)
            radiative = all(abs(m) < bound for m in pair)
            eta = pump_na_fraction(abs(ell) * n_sites, r0, hw.k0_per_um,
                                   hw.na_cap)
            records.append(FeasibilityRecord(
                n_sites=n_sites, ell=ell, m_primes=orders,
                radiative=radiative, eta_pump=eta,
                delta_m_pm2=(0 in orders),
            ))
    return records


def steering_span(focal_length_mm: float, na: float) -> float:
    """Maximum blaze-steered focal span, 2 f NA, in mm."""
    if focal_length_mm <= 0 or na <= 0:
        raise ValidationError("inputs must be positive")
    return 2.0 * focal_length_mm * na


def addressable_sites(span_mm: float, pitch_um: float) -> int:
    """Sites on a square grid of the given pitch filling the steering span."""
    if span_mm <= 0 or pitch_um <= 0:
        raise ValidationError("inputs must be positive")
    # small epsilon so an integral ratio is not lost to representation error
    per_axis = math.floor(span_mm * 1e3 / pitch_um + 1e-9)
    return per_axis ** 2


def site_intensity(p_tot_w: float, n_sites: int,
                   waist_um: float) -> tuple[float, float]:
    """Local intensity per pump site in W/cm^2, both normalization conventions.

    Returns (I_a, I_b) = (P_site/(pi w0^2), 2 P_site/(pi w0^2)); the two
    conventions differ by the Gaussian peak-intensity factor of 2 and both
    appear in practice, so neither is silently preferred.
    """
    if n_sites < 1 or waist_um <= 0 or p_tot_w < 0:
        raise ValidationError("invalid site-intensity inputs")
    p_site = p_tot_w / n_sites
    area_cm2 = math.pi * (waist_um * 1e-4) ** 2
    return p_site / area_cm2, 2.0 * p_site / area_cm2


def detuning_efficiency(eta0: float, detuning_ghz: float,
                        linewidth_ghz: float) -> float:
    """Lorentzian cavity response eta0 / (1 + (2 Delta / kappa)^2)."""
    if linewidth_ghz <= 0:
        raise ValidationError("linewidth must be positive")
    return eta0 / (1.0 + (2.0 * detuning_ghz / linewidth_ghz) ** 2)
