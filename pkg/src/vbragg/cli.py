"""Command-line entry point.

Subcommands:
    selection    channel enumeration (read-out and write-in) as a JSON report
    farfield     sampled intensity map, CSV grid + JSON sidecar
    feasibility  harmonic feasibility map, CSV + JSON sidecar
    budget       efficiency chain, Q requirement, and noise floors
    sweep        re-run selection + farfield across one swept parameter
    validate     parse and check a config, echo the resolved scenario

Exit codes: 0 success, 2 validation/config error, 3 convergence failure,
4 I/O error.
"""

from __future__ import annotations

import argparse
import dataclasses
import datetime
import json
import math
import sys
from pathlib import Path

from . import budget as bud
from . import coupling, farfield, pumpdesign, selection
from .config import Scenario, load_scenario, scenario_to_dict
from .errors import ConvergenceError, ValidationError
from .materials import Chi2Tensor, contract_tensor
from .references import REFERENCE, warning

TWO_PI = 2.0 * math.pi


def _timestamp() -> str:
    return datetime.datetime.now(datetime.timezone.utc).isoformat()


def _emit_report(report: dict, out: str | None) -> None:
    """Serialize a report deterministically; the timestamp stays in one key."""
    report = dict(report)
    report["timestamp"] = _timestamp()
    text = json.dumps(report, sort_keys=True, indent=2) + "\n"
    if out:
        farfield._atomic_write_text(Path(out), text)
    else:
        sys.stdout.write(text)


def _power_scaling(sc: Scenario) -> coupling.PowerScaling:
    return coupling.PowerScaling(
        lambda_rate=sc.chain.lambda_rate,
        p_tot_w=sc.pump.power_mw * 1e-3,
        n_sites=sc.pump.sites,
        waist_um=sc.pump.waist_um,
    )


def _conversion(sc: Scenario) -> tuple[float, float, float]:
    """(g_eff, interaction time, single-pass conversion efficiency)."""
    g_eff = coupling.geff_from_power(_power_scaling(sc))
    t_int = coupling.cavity_interaction_time(
        sc.resonator.quality_factor, sc.mode.wavelength_nm)
    return g_eff, t_int, coupling.rabi_efficiency(g_eff, t_int)


def _design_ell(channel_set: selection.ChannelSet) -> int:
    """Dominant grating order: the smallest nonzero |ell| in the window."""
    ells = sorted({abs(c.ell) for c in channel_set.channels if c.ell != 0})
    if not ells:
        raise ValidationError(
            "no nonzero diffraction order is radiative for this scenario")
    return ells[0]


def _pump_hardware(sc: Scenario) -> pumpdesign.PumpHardware:
    return pumpdesign.PumpHardware(
        pump_wavelength_nm=sc.pump.wavelength_nm,
        pixel_pitch_um=sc.hardware.pixel_pitch_um,
        demagnification=sc.hardware.demagnification,
        focal_length_mm=sc.hardware.focal_length_mm,
        na_cap=sc.hardware.na_cap,
        max_pupil_mm=sc.hardware.max_pupil_mm,
        refresh_hz=sc.hardware.refresh_hz,
    )


# ---------------------------------------------------------------- selection

def build_selection_report(sc: Scenario) -> dict:
    mode = sc.mode
    cs = selection.dfg_channel_set(sc.resonator, mode, sc.pump.sites,
                                   sc.pump.wavelength_nm)
    readout = {}
    for direction in selection.DIRECTIONS:
        for helicity in selection.HELICITIES:
            members = cs.by_channel(direction, helicity)
            readout[f"{direction}_{helicity}"] = {
                "ell": [c.ell for c in members],
                "m": [c.m for c in members],
            }
    ell = _design_ell(cs)
    delta_m, on_axis = selection.fringe_order(mode.azimuthal_order,
                                              sc.pump.sites, ell)
    writein_spec = dataclasses.replace(sc.resonator,
                                       radius_um=sc.writein.radius_um)
    guided = selection.sfg_channel_set(writein_spec, sc.pump.sites,
                                       sc.writein.wavelength_nm)
    writein = {
        f"{direction}_{helicity}": [list(pair) for pair in pairs]
        for (direction, helicity), pairs in guided.items()
    }
    warnings = []
    tensor = Chi2Tensor(sc.materials.d22_m_per_v, sc.materials.d31_m_per_v,
                        sc.materials.chi_iso_m_per_v)
    rms = tensor.rms_surrogate()
    if abs(sc.materials.chi_iso_m_per_v - rms) > 0.05 * sc.materials.chi_iso_m_per_v:
        warnings.append(warning(
            "chi-iso-rms-mismatch",
            f"configured chi_iso={sc.materials.chi_iso_m_per_v:.3e} m/V vs "
            f"RMS surrogate {rms:.3e} m/V",
        ))
    circ = contract_tensor(tensor)
    return {
        "kind": "selection",
        "azimuthal_order": mode.azimuthal_order,
        "n_sites": sc.pump.sites,
        "lambda1_nm": mode.wavelength_nm,
        "lambda2_nm": cs.lambda2_nm,
        "lambda3_nm": cs.lambda3_nm,
        "effective_index": selection.effective_index(
            mode.azimuthal_order, mode.wavelength_nm, sc.resonator.radius_um),
        "readout_channels": readout,
        "design_ell": ell,
        "fringe_delta_m": delta_m,
        "on_axis": on_axis,
        "writein_channels": writein,
        "circular_coefficients": {
            "d_r_abs_m_per_v": abs(circ.d_r),
            "d_l_abs_m_per_v": abs(circ.d_l),
        },
        "warnings": warnings,
    }


def cmd_selection(sc: Scenario, args) -> int:
    _emit_report(build_selection_report(sc), args.out)
    return 0


# ----------------------------------------------------------------- farfield

def _farfield_channels(sc: Scenario, ell: int, eta: float, n_in: float):
    orders = farfield.design_channel_orders(sc.mode.azimuthal_order,
                                            sc.pump.sites, ell)
    pop = 0.25 * eta * n_in
    channels = [
        farfield.FarFieldChannel(orders[0], "R", pop),
        farfield.FarFieldChannel(orders[1], "R", pop),
        farfield.FarFieldChannel(orders[2], "L", pop),
        farfield.FarFieldChannel(orders[3], "L", pop),
    ]
    coherences = {
        "R": farfield.CoherencePair(pop, 0.0),
        "L": farfield.CoherencePair(pop, 0.0),
    }
    return orders, channels, coherences


def build_farfield_grid(sc: Scenario, *, mode: str = "full",
                        n_in: float = 1.0,
                        grid: farfield.GridSpec | None = None) -> farfield.FarFieldGrid:
    cs = selection.dfg_channel_set(sc.resonator, sc.mode, sc.pump.sites,
                                   sc.pump.wavelength_nm)
    ell = _design_ell(cs)
    g_eff, t_int, eta = _conversion(sc)
    k3 = TWO_PI / (cs.lambda3_nm * 1e-3)
    grid = grid if grid is not None else sc.grid
    orders, channels, coherences = _farfield_channels(sc, ell, eta, n_in)
    meta = {
        "azimuthal_order": sc.mode.azimuthal_order,
        "n_sites": sc.pump.sites,
        "design_ell": ell,
        "channel_orders": orders,
        "lambda3_nm": cs.lambda3_nm,
        "radius_um": sc.resonator.radius_um,
        "conversion_efficiency": eta,
        "n_in": n_in,
        "map_mode": mode,
        "seed": sc.seed,
    }
    if mode == "isotropic":
        # pair the orders as (Q+, Q'+, Q-, Q'-) with Q- = -Q'+ and Q'- = -Q+
        iso = (orders[0], orders[2], orders[1], orders[3])
        return farfield.intensity_isotropic(
            sc.mode.azimuthal_order, sc.pump.sites, iso, grid,
            amplitude=max(0.25 * eta * n_in, 1.0), k3_per_um=k3,
            radius_um=sc.resonator.radius_um, metadata=meta)
    return farfield.intensity_map(channels, coherences, grid, k3,
                                  sc.resonator.radius_um, metadata=meta)


def cmd_farfield(sc: Scenario, args) -> int:
    out_csv = Path(args.out) if args.out else Path("farfield.csv")
    grid = build_farfield_grid(sc, mode=args.mode, n_in=args.n_in)
    sidecar = farfield.write_grid(grid, out_csv)
    # collection fraction needs the full hemisphere, not the display grid
    hemi = build_farfield_grid(
        sc, mode=args.mode, n_in=args.n_in,
        grid=farfield.GridSpec(90.0, 0.25, 2.0))
    eta_spatial = farfield.spatial_efficiency(hemi, sc.feasibility.na)
    report = {
        "kind": "farfield",
        "csv": str(out_csv),
        "sidecar": str(sidecar),
        "map_mode": args.mode,
        "design_ell": grid.metadata["design_ell"],
        "channel_orders": grid.metadata["channel_orders"],
        "spatial_efficiency": eta_spatial,
        "collection_na": sc.feasibility.na,
        "warnings": [warning(
            "spatial-coupling-two-values",
            f"computed cone fraction {eta_spatial:.3f} at NA="
            f"{sc.feasibility.na}; reference values are "
            f"{REFERENCE['eta_spatial_budget']} (budget) and "
            f"{REFERENCE['eta_spatial_simulated']} (simulated)",
        )],
    }
    _emit_report(report, None)
    return 0


# -------------------------------------------------------------- feasibility

def cmd_feasibility(sc: Scenario, args) -> int:
    fc = sc.feasibility
    hw = _pump_hardware(sc)
    records = pumpdesign.feasibility_map(
        sc.mode.azimuthal_order, hw,
        radius_um=sc.resonator.radius_um,
        wavelength_nm=fc.wavelength_nm,
        na=fc.na,
        n_values=range(fc.n_min, fc.n_max + 1),
        ell_values=range(fc.ell_min, fc.ell_max + 1),
        r0_um=sc.pump.annulus_radius_um,
    )
    out_csv = Path(args.out) if args.out else Path("feasibility.csv")
    lines = ["N,ell,m_primes,radiative,eta_pump,delta_m_pm2"]
    for rec in records:
        m_primes = ";".join(str(m) for m in rec.m_primes)
        lines.append(
            f"{rec.n_sites},{rec.ell},{m_primes},"
            f"{str(rec.radiative).lower()},{rec.eta_pump!r},"
            f"{str(rec.delta_m_pm2).lower()}"
        )
    farfield._atomic_write_text(out_csv, "\n".join(lines) + "\n")

    cutoff = pumpdesign.pupil_cutoff(hw)
    m_pump = sc.pump.sites
    na_req = pumpdesign.na_required(m_pump, sc.pump.wavelength_nm,
                                    sc.pump.annulus_radius_um)
    q_min = pumpdesign.qplate_min_charge(m_pump, hw.k0_per_um,
                                         sc.pump.annulus_radius_um, hw.na_cap)
    span = pumpdesign.steering_span(hw.focal_length_mm, hw.na_cap)
    sites = pumpdesign.addressable_sites(span, sc.chain.steering_pitch_um)
    i_a, i_b = pumpdesign.site_intensity(sc.pump.power_mw * 1e-3,
                                         sc.pump.sites, sc.pump.waist_um)
    warnings = [warning(
        "site-intensity-convention",
        f"I_a={i_a:.3e} W/cm^2 (mean), I_b={i_b:.3e} W/cm^2 (Gaussian peak)",
    )]
    if abs(na_req - REFERENCE["na_req_quoted"]) > 0.2 * REFERENCE["na_req_quoted"]:
        warnings.append(warning(
            "na-requirement-quote",
            f"formula gives NA_req={na_req:.2f} for m={m_pump} at "
            f"r0={sc.pump.annulus_radius_um} um; quoted reference is "
            f"{REFERENCE['na_req_quoted']}",
        ))
    if q_min != REFERENCE["qplate_charge_quoted"]:
        warnings.append(warning(
            "qplate-charge-discrepancy",
            f"formula gives q_min={q_min}; worked reference design uses "
            f"q={REFERENCE['qplate_charge_quoted']}",
        ))
    sidecar = {
        "schema_version": farfield.SIDECAR_SCHEMA_VERSION,
        "kind": "feasibility_map",
        "azimuthal_order": sc.mode.azimuthal_order,
        "radius_um": sc.resonator.radius_um,
        "wavelength_nm": fc.wavelength_nm,
        "na": fc.na,
        "n_range": [fc.n_min, fc.n_max],
        "ell_range": [fc.ell_min, fc.ell_max],
        "pupil_cutoff_per_um": {"k_opt": cutoff.k_opt, "k_slm": cutoff.k_slm,
                                "k_c": cutoff.k_c},
        "na_required": na_req,
        "qplate_min_charge": q_min,
        "steering_span_mm": span,
        "addressable_sites": sites,
        "site_intensity_w_cm2": {"mean": i_a, "peak": i_b},
        "warnings": warnings,
    }
    side = out_csv.with_suffix(".json")
    farfield._atomic_write_text(
        side, json.dumps(sidecar, sort_keys=True, indent=2) + "\n")
    _emit_report({"kind": "feasibility", "csv": str(out_csv),
                  "sidecar": str(side), "rows": len(records),
                  "warnings": warnings}, None)
    return 0


# ------------------------------------------------------------------- budget

def build_budget_report(sc: Scenario) -> dict:
    g_eff, t_int, eta_dfg = _conversion(sc)
    chain = bud.efficiency_chain(sc.chain.eta_zpl, eta_dfg,
                                 sc.chain.eta_spatial)
    q_req = bud.required_q(sc.chain.target_eta_dfg, g_eff,
                           sc.mode.wavelength_nm)
    i_a, i_b = pumpdesign.site_intensity(sc.pump.power_mw * 1e-3,
                                         sc.pump.sites, sc.pump.waist_um)
    raman = bud.raman_fraction(sc.chain.raman_gain_cm_per_gw, i_a,
                               sc.resonator.linbo3_thickness_nm * 1e-3)
    leak_w, leak_hz = bud.pump_leakage(sc.pump.power_mw * 1e-3,
                                       sc.chain.extinction_db,
                                       sc.pump.wavelength_nm)
    th_log10, th_lin = bud.thermal_occupancy(sc.mode.wavelength_nm,
                                             sc.chain.temperature_k)
    warnings = [
        warning("spatial-coupling-two-values",
                f"chain uses eta_spatial={sc.chain.eta_spatial}; reference "
                f"values are {REFERENCE['eta_spatial_budget']} (budget) and "
                f"{REFERENCE['eta_spatial_simulated']} (simulated)"),
        warning("site-intensity-convention",
                f"Raman estimate uses the mean-intensity convention "
                f"I_a={i_a:.3e} W/cm^2; the Gaussian-peak convention gives "
                f"I_b={i_b:.3e} W/cm^2"),
        warning("extinction-reference",
                f"using {sc.chain.extinction_db} dB; quoted floor is "
                f">{REFERENCE['extinction_quoted_db']} dB while the quoted "
                f"residual implies {REFERENCE['extinction_implied_db']} dB"),
    ]
    return {
        "kind": "budget",
        "g_eff_rad_s": g_eff,
        "interaction_time_s": t_int,
        "chain": {
            "eta_zpl": chain.eta_zpl,
            "eta_dfg": chain.eta_dfg,
            "eta_spatial": chain.eta_spatial,
            "eta_tot": chain.eta_tot,
            "formula": "eta_tot = eta_zpl * eta_dfg * eta_spatial",
        },
        "required_q": {
            "target_eta_dfg": sc.chain.target_eta_dfg,
            "value": q_req,
            "formula": "Q = omega1 * asin(sqrt(eta)) / g_eff",
        },
        "noise": {
            "raman_fraction": raman,
            "raman_formula": "f = g_R * I * L",
            "leakage_power_w": leak_w,
            "leakage_photon_rate_hz": leak_hz,
            "thermal_log10_occupancy": th_log10,
            "thermal_occupancy": th_lin,
        },
        "warnings": warnings,
    }


def cmd_budget(sc: Scenario, args) -> int:
    _emit_report(build_budget_report(sc), args.out)
    return 0


# -------------------------------------------------------------------- sweep

def _set_by_path(data: dict, path: str, raw: str):
    keys = path.split(".")
    node = data
    for key in keys[:-1]:
        if not isinstance(node, dict) or key not in node:
            raise ValidationError(f"unknown sweep parameter path {path!r}")
        node = node[key]
    leaf = keys[-1]
    if not isinstance(node, dict) or leaf not in node:
        raise ValidationError(f"unknown sweep parameter path {path!r}")
    current = node[leaf]
    if isinstance(current, bool) or not isinstance(current, (int, float)):
        raise ValidationError(f"parameter {path!r} is not numeric")
    try:
        value = int(raw) if isinstance(current, int) else float(raw)
    except ValueError as exc:
        raise ValidationError(f"cannot parse sweep value {raw!r}") from exc
    node[leaf] = value
    return value


def cmd_sweep(sc: Scenario, args) -> int:
    out_dir = Path(args.out) if args.out else Path("sweep")
    out_dir.mkdir(parents=True, exist_ok=True)
    raw_values = [v for v in args.values.split(",") if v.strip()]
    if not raw_values:
        raise ValidationError("sweep needs at least one value")
    from .config import scenario_from_dict
    entries = []
    for raw in raw_values:
        data = scenario_to_dict(sc)
        value = _set_by_path(data, args.param, raw.strip())
        sc_i = scenario_from_dict(data)
        sel = build_selection_report(sc_i)
        g_eff, t_int, eta = _conversion(sc_i)
        stem = f"sweep_{args.param}_{value}"
        grid = build_farfield_grid(sc_i)
        csv_path = out_dir / f"{stem}.csv"
        sidecar = farfield.write_grid(grid, csv_path)
        summary = {
            "kind": "sweep_point",
            "param": args.param,
            "value": value,
            "g_eff_rad_s": g_eff,
            "conversion_efficiency": eta,
            "design_ell": sel["design_ell"],
            "fringe_delta_m": sel["fringe_delta_m"],
            "on_axis": sel["on_axis"],
            "lambda3_nm": sel["lambda3_nm"],
            "warnings": sel["warnings"],
        }
        summary_path = out_dir / f"{stem}_summary.json"
        summary_out = dict(summary)
        summary_out["timestamp"] = _timestamp()
        farfield._atomic_write_text(
            summary_path,
            json.dumps(summary_out, sort_keys=True, indent=2) + "\n")
        entries.append({
            "value": value,
            "grid_csv": csv_path.name,
            "grid_sidecar": sidecar.name,
            "summary": summary_path.name,
        })
    manifest = {
        "kind": "sweep_manifest",
        "param": args.param,
        "entries": entries,
        "warnings": [],
    }
    manifest_path = out_dir / "manifest.json"
    manifest_out = dict(manifest)
    manifest_out["timestamp"] = _timestamp()
    farfield._atomic_write_text(
        manifest_path, json.dumps(manifest_out, sort_keys=True, indent=2) + "\n")
    _emit_report({"kind": "sweep", "manifest": str(manifest_path),
                  "points": len(entries), "warnings": []}, None)
    return 0


# ----------------------------------------------------------------- validate

def cmd_validate(sc: Scenario, args) -> int:
    _emit_report({"kind": "validate", "ok": True,
                  "scenario": scenario_to_dict(sc), "warnings": []}, args.out)
    return 0


# -------------------------------------------------------------------- main

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vbragg",
        description="Pump-programmed ring-grating photonic interface toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", default="reference",
                       help="YAML scenario file, or 'reference' for built-in")
        p.add_argument("--out", default=None, help="output path")
        p.add_argument("--seed", type=int, default=None,
                       help="override the scenario RNG seed")
        p.add_argument("--format", choices=("json", "csv"), default=None,
                       help="output format where a choice exists")

    p_sel = sub.add_parser("selection", help="channel enumeration report")
    common(p_sel)
    p_ff = sub.add_parser("farfield", help="far-field intensity grid")
    common(p_ff)
    p_ff.add_argument("--mode", choices=("full", "isotropic"), default="full")
    p_ff.add_argument("--n-in", type=float, default=1.0, dest="n_in",
                      help="input population fed to the converter")
    p_fz = sub.add_parser("feasibility", help="harmonic feasibility map")
    common(p_fz)
    p_bud = sub.add_parser("budget", help="efficiency and noise budget")
    common(p_bud)
    p_sw = sub.add_parser("sweep", help="sweep one scenario parameter")
    common(p_sw)
    p_sw.add_argument("--param", required=True,
                      help="dotted path, e.g. pump.sites")
    p_sw.add_argument("--values", required=True,
                      help="comma-separated values")
    p_val = sub.add_parser("validate", help="check a config file")
    common(p_val)
    return parser


_COMMANDS = {
    "selection": cmd_selection,
    "farfield": cmd_farfield,
    "feasibility": cmd_feasibility,
    "budget": cmd_budget,
    "sweep": cmd_sweep,
    "validate": cmd_validate,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        sc = load_scenario(args.config)
        if args.seed is not None:
            sc = dataclasses.replace(sc, seed=args.seed)
        return _COMMANDS[args.command](sc, args)
    except ConvergenceError as exc:
        print(f"error: convergence failure: {exc}", file=sys.stderr)
        return 3
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: I/O failure: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
