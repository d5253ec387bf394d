"""Azimuthal selection rules, radiative windows, and guided windows.

A pump sampled at N azimuthal sites supplies angular momentum in integer
multiples of N; the rho x phi polarization geometry adds a fixed +/-2.
Combined with the circulating-mode order M this fixes which diffraction
orders ell can radiate (DFG read-out) or stay guided (SFG write-in).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import ValidationError

DIRECTIONS = ("cw", "ccw")
HELICITIES = ("R", "L")

# sigma_s: +1 for RHCP, -1 for LHCP
HELICITY_SIGN = {"R": +1, "L": -1}
# +M phase for clockwise circulation, -M for counterclockwise
DIRECTION_SIGN = {"cw": +1, "ccw": -1}


@dataclass(frozen=True)
class ResonatorSpec:
    """Geometry and optical parameters of the hybrid ring."""

    radius_um: float
    width_nm: float = 200.0
    diamond_thickness_nm: float = 100.0
    linbo3_thickness_nm: float = 280.0
    n_core: float = 2.4
    n_out: float = 1.0
    quality_factor: float = 1.0e3

    def __post_init__(self):
        for name in ("radius_um", "width_nm", "diamond_thickness_nm",
                     "linbo3_thickness_nm", "quality_factor"):
            if getattr(self, name) <= 0:
                raise ValidationError(f"{name} must be positive")
        if not self.n_core > self.n_out >= 1.0:
            raise ValidationError(
                f"need n_core > n_out >= 1, got n_core={self.n_core}, n_out={self.n_out}"
            )


@dataclass(frozen=True)
class WGMMode:
    """Circulating-mode indices (azimuthal, radial, longitudinal) and wavelength."""

    azimuthal_order: int
    radial_order: int = 1
    longitudinal_order: int = 2
    wavelength_nm: float = 736.0

    def __post_init__(self):
        if self.azimuthal_order < 0:
            raise ValidationError("azimuthal_order must be >= 0")
        if self.wavelength_nm <= 0:
            raise ValidationError("wavelength_nm must be positive")


@dataclass(frozen=True)
class Channel:
    """One radiative (DFG) or guided (SFG) output channel."""

    process: str        # "dfg" | "sfg"
    direction: str      # "cw" | "ccw"
    helicity: str       # "R" | "L"
    ell: int            # pump diffraction order
    m: int              # radiated (DFG) or guided (SFG) azimuthal order


@dataclass(frozen=True)
class ChannelSet:
    """All channels for one scenario, with the wavelengths that close energy."""

    n_sites: int
    mode: WGMMode
    channels: tuple[Channel, ...]
    lambda2_nm: float
    lambda3_nm: float

    def __post_init__(self):
        # energy conservation: 1/l1 = 1/l2 + 1/l3 within 0.1%
        lhs = 1.0 / self.mode.wavelength_nm
        rhs = 1.0 / self.lambda2_nm + 1.0 / self.lambda3_nm
        if abs(lhs - rhs) > 1e-3 * lhs:
            raise ValidationError(
                f"wavelength triple violates energy conservation: "
                f"1/{self.mode.wavelength_nm} != 1/{self.lambda2_nm} + 1/{self.lambda3_nm}"
            )

    def by_channel(self, direction: str, helicity: str) -> list[Channel]:
        return [c for c in self.channels
                if c.direction == direction and c.helicity == helicity]


def dfg_output_wavelength(lambda1_nm: float, lambda2_nm: float) -> float:
    """Difference-frequency output wavelength, 1/l3 = 1/l1 - 1/l2."""
    if lambda1_nm <= 0 or lambda2_nm <= 0:
        raise ValidationError("wavelengths must be positive")
    if lambda1_nm >= lambda2_nm:
        raise ValidationError(
            f"DFG requires lambda1 < lambda2, got {lambda1_nm} >= {lambda2_nm}"
        )
    return 1.0 / (1.0 / lambda1_nm - 1.0 / lambda2_nm)


def sfg_output_wavelength(lambda2_nm: float, lambda3_nm: float) -> float:
    """Sum-frequency output wavelength, 1/l1 = 1/l2 + 1/l3."""
    if lambda2_nm <= 0 or lambda3_nm <= 0:
        raise ValidationError("wavelengths must be positive")
    return 1.0 / (1.0 / lambda2_nm + 1.0 / lambda3_nm)


def effective_index(azimuthal_order: int, lambda1_nm: float, radius_um: float) -> float:
    """Phase-matching effective index M*lambda/(2 pi R)."""
    return azimuthal_order * lambda1_nm / (2.0 * math.pi * radius_um * 1e3)


def _integers_strictly_between(lo: float, hi: float) -> list[int]:
    """Integers in the open interval (lo, hi); boundary-exact values excluded."""
    if not (lo < hi):
        return []
    start = math.floor(lo) + 1
    stop = math.ceil(hi) - 1
    return list(range(start, stop + 1))


def dfg_channel_order(M: int, N: int, ell: int, direction: str, helicity: str) -> int:
    """Radiated azimuthal order m = ell*N +/- M + sigma_s*2."""
    return ell * N + DIRECTION_SIGN[direction] * M + HELICITY_SIGN[helicity] * 2


def dfg_window(spec: ResonatorSpec, M: int, N: int, lambda3_nm: float,
               direction: str, helicity: str) -> list[int]:
    """Diffraction orders ell whose output order is radiative.

    The light-line condition |m|/R < 2 pi / lambda3 is strict: a mode exactly
    on the line is non-radiative. The ell scan range comes from the analytic
    window endpoints themselves.
    """
    if N < 1:
        raise ValidationError("N must be >= 1")
    bound = 2.0 * math.pi * spec.radius_um * 1e3 / lambda3_nm
    offset = DIRECTION_SIGN[direction] * M + HELICITY_SIGN[helicity] * 2
    return _integers_strictly_between((-bound - offset) / N, (bound - offset) / N)


def sfg_window(spec: ResonatorSpec, N: int, lambda1_nm: float,
               direction: str, helicity: str) -> list[tuple[int, int]]:
    """(ell, M) pairs whose up-converted order stays guided.

    Guided orders satisfy k0*n_out < M/R < k0*n_core (open interval), with
    M = |ell*N + sigma_s*2|.
    """
    if N < 1:
        raise ValidationError("N must be >= 1")
    sigma = HELICITY_SIGN[helicity]
    k0r = 2.0 * math.pi * spec.radius_um * 1e3 / lambda1_nm
    if direction == "cw":
        lo = (k0r * spec.n_out - sigma * 2) / N
        hi = (k0r * spec.n_core - sigma * 2) / N
    else:
        lo = (-k0r * spec.n_core - sigma * 2) / N
        hi = (-k0r * spec.n_out - sigma * 2) / N
    return [(ell, abs(ell * N + sigma * 2))
            for ell in _integers_strictly_between(lo, hi)]


def fringe_order(M: int, N: int, ell: int) -> tuple[int, bool]:
    """Azimuthal harmonic order of the interference pattern.

    Returns (delta_m, on_axis): delta_m = 2|M - ell*N| counts the fringes;
    the pattern is bright on axis exactly when |M - ell*N| = 2 (an m = 0
    output component exists).
    """
    gap = abs(M - ell * N)
    return 2 * gap, gap == 2


def dfg_channel_set(spec: ResonatorSpec, mode: WGMMode, n_sites: int,
                    lambda2_nm: float) -> ChannelSet:
    """Enumerate every radiative DFG channel for the scenario."""
    lambda3 = dfg_output_wavelength(mode.wavelength_nm, lambda2_nm)
    channels = []
    for direction in DIRECTIONS:
        for helicity in HELICITIES:
            for ell in dfg_window(spec, mode.azimuthal_order, n_sites,
                                  lambda3, direction, helicity):
                channels.append(Channel(
                    process="dfg", direction=direction, helicity=helicity,
                    ell=ell,
                    m=dfg_channel_order(mode.azimuthal_order, n_sites, ell,
                                        direction, helicity),
                ))
    return ChannelSet(n_sites=n_sites, mode=mode, channels=tuple(channels),
                      lambda2_nm=lambda2_nm, lambda3_nm=lambda3)


def sfg_channel_set(spec: ResonatorSpec, n_sites: int,
                    lambda1_nm: float) -> dict[tuple[str, str], list[tuple[int, int]]]:
    """Guided (ell, M) solutions per (direction, helicity) channel."""
    return {
        (direction, helicity): sfg_window(spec, n_sites, lambda1_nm,
                                          direction, helicity)
        for direction in DIRECTIONS
        for helicity in HELICITIES
    }
