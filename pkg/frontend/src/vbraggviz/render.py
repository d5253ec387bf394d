"""Figure builders: polar far-field maps, feasibility scatter, budget bars.

Rendering is deterministic: fixed style, Agg backend, no timestamps in the
image metadata, so identical inputs give byte-identical files.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .io import (load_budget, load_feasibility, load_grid,  # noqa: E402
                 load_manifest)

DPI = 150
PNG_METADATA = {"Software": "vbraggviz"}

_STYLE = {
    "figure.facecolor": "white",
    "font.size": 9,
    "axes.titlesize": 10,
}


def _panel_title(meta: dict) -> str:
    parts = []
    if "azimuthal_order" in meta:
        parts.append(f"M={meta['azimuthal_order']}")
    if "n_sites" in meta:
        parts.append(f"N={meta['n_sites']}")
    if "design_ell" in meta:
        parts.append(f"ell={meta['design_ell']}")
    return ", ".join(parts)


def _draw_polar(ax, theta_deg, phi_rad, intensity, meta):
    # close the azimuthal seam so the mesh covers the full disc
    phi = np.concatenate([phi_rad, [phi_rad[0] + 2.0 * np.pi]])
    values = np.concatenate([intensity, intensity[:, :1]], axis=1)
    vmax = 1.0 if meta.get("normalization") == "peak" else None
    if float(values.max()) == 0.0:
        vmax = 1.0  # all-zero grid: uniform minimum-color panel
    mesh = ax.pcolormesh(phi, theta_deg, values, cmap="viridis",
                         vmin=0.0, vmax=vmax, shading="auto")
    ax.set_theta_zero_location("E")
    ax.grid(False)
    ax.set_xticks([])
    ax.set_yticks([theta_deg[-1]])
    ax.set_yticklabels([f"{theta_deg[-1]:.0f}\N{DEGREE SIGN}"])
    ax.set_title(_panel_title(meta))
    return mesh


def _save(fig, out_path: str | Path) -> Path:
    out_path = Path(out_path)
    fig.savefig(out_path, dpi=DPI, metadata=PNG_METADATA)
    plt.close(fig)
    return out_path


def build_farfield_figure(csv_path: str | Path):
    """Build the polar figure; returns (fig, ax, theta_max_deg).

    Split out from render_farfield_polar so callers can query the drawn
    axes geometry (for image-space checks) before or instead of saving.
    """
    theta, phi, intensity, meta = load_grid(csv_path)
    with plt.rc_context(_STYLE):
        fig = plt.figure(figsize=(4.2, 4.2))
        ax = fig.add_subplot(projection="polar")
        mesh = _draw_polar(ax, theta, phi, intensity, meta)
        fig.colorbar(mesh, ax=ax, shrink=0.7, pad=0.08)
    return fig, ax, float(theta[-1])


def render_farfield_polar(csv_path: str | Path, out_path: str | Path) -> Path:
    fig, _, _ = build_farfield_figure(csv_path)
    return _save(fig, out_path)


def render_feasibility_scatter(csv_path: str | Path,
                               out_path: str | Path) -> Path:
    rows, meta = load_feasibility(csv_path)
    with plt.rc_context(_STYLE):
        fig, ax = plt.subplots(figsize=(5.0, 3.6))
        for radiative, color in ((False, "0.8"), (True, "tab:blue")):
            pts = [r for r in rows if r["radiative"] == radiative]
            if pts:
                ax.scatter([r["N"] for r in pts], [r["ell"] for r in pts],
                           s=[30 + 170 * r["eta_pump"] for r in pts],
                           c=color, edgecolors="none",
                           label="radiative" if radiative else "dark")
        ring = [r for r in rows if r["delta_m_pm2"]]
        if ring:
            ax.scatter([r["N"] for r in ring], [r["ell"] for r in ring],
                       s=90, facecolors="none", edgecolors="tab:red",
                       label="on-axis order")
        ax.set_xlabel("pump sites N")
        ax.set_ylabel("diffraction order ell")
        ax.set_title(f"feasibility map, M={meta.get('azimuthal_order', '?')}")
        ax.legend(loc="best", fontsize=7)
        return _save(fig, out_path)


def render_budget_bars(json_path: str | Path, out_path: str | Path) -> Path:
    report = load_budget(json_path)
    chain = report["chain"]
    labels = ["eta_zpl", "eta_dfg", "eta_spatial", "eta_tot"]
    values = [chain[k] for k in labels]
    with plt.rc_context(_STYLE):
        fig, ax = plt.subplots(figsize=(5.0, 3.2))
        bars = ax.bar(labels, values, color="tab:blue")
        ax.set_yscale("log")
        ax.set_ylabel("efficiency")
        ax.set_title("end-to-end efficiency chain")
        for bar, value in zip(bars, values):
            ax.annotate(f"{value:.2e}",
                        (bar.get_x() + bar.get_width() / 2, value),
                        ha="center", va="bottom", fontsize=7)
        return _save(fig, out_path)


def render_sweep_panel(manifest_path: str | Path,
                       out_path: str | Path) -> Path:
    manifest_path = Path(manifest_path)
    manifest = load_manifest(manifest_path)
    entries = manifest["entries"]
    if not entries:
        raise ValueError("sweep manifest has no entries")
    n = len(entries)
    cols = min(n, 4)
    rows = (n + cols - 1) // cols
    with plt.rc_context(_STYLE):
        fig = plt.figure(figsize=(3.2 * cols, 3.4 * rows))
        for i, entry in enumerate(entries):
            theta, phi, intensity, meta = load_grid(
                manifest_path.parent / entry["grid_csv"])
            ax = fig.add_subplot(rows, cols, i + 1, projection="polar")
            _draw_polar(ax, theta, phi, intensity, meta)
        fig.suptitle(f"sweep over {manifest['param']}")
        return _save(fig, out_path)


RENDERERS = {
    "farfield_polar": render_farfield_polar,
    "feasibility_scatter": render_feasibility_scatter,
    "budget_bars": render_budget_bars,
    "sweep_panel": render_sweep_panel,
}


def render(kind: str, in_path: str | Path, out_path: str | Path) -> Path:
    if kind not in RENDERERS:
        raise ValueError(f"unknown figure kind {kind!r}; "
                         f"choose from {sorted(RENDERERS)}")
    return RENDERERS[kind](in_path, out_path)
