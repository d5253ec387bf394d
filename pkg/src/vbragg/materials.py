"""Material data for the hybrid diamond / thin-film LiNbO3 ring.

Holds the tabulated refractive indices, the relevant chi(2) coefficients of
z-cut LiNbO3, and the contraction of the (d22, d31) pair into the
circular-basis coefficients that weight the RHCP/LHCP radiative channels.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

from .errors import OutOfRangeError, ValidationError

SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class MaterialTable:
    """Tabulated refractive indices: (material, wavelength_nm, index, note)."""

    entries: tuple[tuple[str, float, float, str], ...]

    def __post_init__(self):
        for name, wl, n, _note in self.entries:
            if wl <= 0:
                raise ValidationError(f"non-positive wavelength {wl} nm for {name}")
            if n <= 1:
                raise ValidationError(f"index {n} for {name} must exceed 1")

    def materials(self) -> list[str]:
        return sorted({name for name, *_ in self.entries})

    def points(self, material: str) -> list[tuple[float, float]]:
        pts = sorted(
            (wl, n) for name, wl, n, _ in self.entries if name == material
        )
        if not pts:
            raise ValidationError(
                f"unknown material {material!r}; known: {self.materials()}"
            )
        return pts

    def lookup_index(self, material: str, wavelength_nm: float) -> float:
        """Index at a tabulated point exactly, linear interpolation between.

        Extrapolation outside the tabulated span is an error, never silent.
        """
        pts = self.points(material)
        lo, hi = pts[0][0], pts[-1][0]
        if not lo <= wavelength_nm <= hi:
            raise OutOfRangeError(
                f"wavelength {wavelength_nm} nm outside tabulated span "
                f"[{lo}, {hi}] nm for {material}"
            )
        for wl, n in pts:
            if wl == wavelength_nm:
                return n
        for (wl0, n0), (wl1, n1) in zip(pts, pts[1:]):
            if wl0 < wavelength_nm < wl1:
                t = (wavelength_nm - wl0) / (wl1 - wl0)
                return n0 + t * (n1 - n0)
        raise AssertionError("unreachable")


def load_material_table(path: str | Path) -> MaterialTable:
    """Parse a table file: one `material, wavelength_nm, index` record per line.

    Blank lines and `#` comments are skipped. A trailing free-text field, when
    present, is kept as the source note.
    """
    entries = []
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = [p.strip() for p in line.split(",")]
        if len(parts) < 3:
            raise ValidationError(f"{path}:{lineno}: expected material, wavelength_nm, index")
        name = parts[0]
        try:
            wl, n = float(parts[1]), float(parts[2])
        except ValueError as exc:
            raise ValidationError(f"{path}:{lineno}: {exc}") from exc
        note = parts[3] if len(parts) > 3 else ""
        entries.append((name, wl, n, note))
    return MaterialTable(tuple(entries))


# Built-in defaults for the hybrid diamond / thin-film LiNbO3 device stack.
DEFAULT_TABLE = MaterialTable(
    (
        ("diamond", 736.0, 2.41, "bulk diamond, visible"),
        ("diamond", 1347.0, 2.38, "bulk diamond, telecom"),
        ("diamond", 1623.0, 2.38, "bulk diamond, pump band"),
        ("LiNbO3", 736.0, 2.23, "ordinary index, z-cut thin film"),
        ("LiNbO3", 1347.0, 2.14, "ordinary index, z-cut thin film"),
        ("LiNbO3", 1623.0, 2.13, "ordinary index, z-cut thin film"),
    )
)


def lookup_index(material: str, wavelength_nm: float) -> float:
    """Default-table index lookup."""
    return DEFAULT_TABLE.lookup_index(material, wavelength_nm)


@dataclass(frozen=True)
class Chi2Tensor:
    """chi(2) coefficients relevant to the rho x phi polarization geometry.

    chi_iso is the scalar surrogate used by isotropic solvers; it is stored as
    configuration rather than derived from (d22, d31) because the published
    surrogate value is not the RMS of the d pair (see warnings in reports).
    """

    d22: float = 2.1e-12     # m/V
    d31: float = -4.3e-12    # m/V
    chi_iso: float = 4.5e-11  # m/V, isotropic-solver surrogate

    def __post_init__(self):
        if self.chi_iso <= 0:
            raise ValidationError(f"chi_iso must be positive, got {self.chi_iso}")

    def rms_surrogate(self) -> float:
        """RMS of the circular coefficients, sqrt((|d_R|^2 + |d_L|^2)/2)."""
        return math.sqrt((self.d22**2 + self.d31**2) / 2.0)


@dataclass(frozen=True)
class CircularCoefficients:
    """Circular-basis coupling coefficients for RHCP/LHCP channels."""

    d_r: complex
    d_l: complex


def contract_tensor(t: Chi2Tensor) -> CircularCoefficients:
    """Contract (d22, d31) into the circular basis.

    d_R = (d22 + i d31)/sqrt(2), d_L = (d22 - i d31)/sqrt(2); the magnitudes
    satisfy |d_R|^2 + |d_L|^2 = d22^2 + d31^2 identically.
    """
    return CircularCoefficients(
        d_r=complex(t.d22, t.d31) / SQRT2,
        d_l=complex(t.d22, -t.d31) / SQRT2,
    )
