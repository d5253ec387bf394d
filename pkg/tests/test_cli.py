import json
from pathlib import Path

import pytest

from vbragg.cli import main
from vbragg.farfield import read_grid
from vbragg.references import KNOWN_DISCREPANCIES


def _load_report(path: Path) -> dict:
    report = json.loads(path.read_text())
    report.pop("timestamp", None)
    return report


def _check_warnings(report: dict):
    for w in report.get("warnings", []):
        assert w["id"] in KNOWN_DISCREPANCIES


def test_selection_report_deterministic(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["selection", "--out", str(a)]) == 0
    assert main(["selection", "--out", str(b)]) == 0
    assert _load_report(a) == _load_report(b)


def test_selection_report_content(tmp_path):
    out = tmp_path / "sel.json"
    assert main(["selection", "--out", str(out)]) == 0
    report = _load_report(out)
    assert report["readout_channels"]["cw_R"]["ell"] == [-1]
    assert report["readout_channels"]["ccw_R"]["ell"] == [1]
    assert report["lambda3_nm"] == pytest.approx(1346.71, abs=0.01)
    assert report["on_axis"] is True
    _check_warnings(report)


def test_budget_report(tmp_path):
    out = tmp_path / "budget.json"
    assert main(["budget", "--out", str(out)]) == 0
    report = _load_report(out)
    assert report["chain"]["eta_tot"] == pytest.approx(
        report["chain"]["eta_zpl"] * report["chain"]["eta_dfg"]
        * report["chain"]["eta_spatial"])
    assert report["required_q"]["value"] > 1e6
    assert report["noise"]["leakage_photon_rate_hz"] == pytest.approx(
        3.7e4, rel=0.1)
    _check_warnings(report)


def test_farfield_writes_grid_and_sidecar(tmp_path, capsys):
    csv_path = tmp_path / "ff.csv"
    assert main(["farfield", "--out", str(csv_path)]) == 0
    report = json.loads(capsys.readouterr().out)
    _check_warnings(report)
    grid = read_grid(csv_path)
    assert grid.intensity.max() == pytest.approx(1.0)
    assert grid.metadata["design_ell"] == 1
    assert grid.metadata["channel_orders"] == [0, 4, -4, 0]
    side = json.loads((tmp_path / "ff.json").read_text())
    assert side["schema_version"] == 1


def test_farfield_isotropic_mode(tmp_path, capsys):
    csv_path = tmp_path / "iso.csv"
    assert main(["farfield", "--mode", "isotropic", "--out", str(csv_path)]) == 0
    grid = read_grid(csv_path)
    assert grid.metadata["map_mode"] == "isotropic"
    assert grid.intensity.min() >= 0.0


def test_feasibility_csv(tmp_path, capsys):
    csv_path = tmp_path / "fz.csv"
    assert main(["feasibility", "--out", str(csv_path)]) == 0
    _check_warnings(json.loads(capsys.readouterr().out))
    lines = csv_path.read_text().splitlines()
    assert lines[0] == "N,ell,m_primes,radiative,eta_pump,delta_m_pm2"
    # reference design row: N=23, ell=1, on-axis order present
    rows = {tuple(line.split(",")[:2]): line for line in lines[1:]}
    ref = rows[("23", "1")]
    assert ref.endswith("true")
    side = json.loads(csv_path.with_suffix(".json").read_text())
    assert side["qplate_min_charge"] == 10
    assert side["addressable_sites"] == 81225
    _check_warnings(side)


def test_sweep_outputs(tmp_path, capsys):
    out_dir = tmp_path / "sw"
    assert main(["sweep", "--param", "pump.power_mw", "--values", "45,180",
                 "--out", str(out_dir)]) == 0
    manifest = json.loads((out_dir / "manifest.json").read_text())
    assert [e["value"] for e in manifest["entries"]] == [45.0, 180.0]
    summaries = [json.loads((out_dir / e["summary"]).read_text())
                 for e in manifest["entries"]]
    # G_eff scales as sqrt(P): x4 power doubles the rate
    ratio = summaries[1]["g_eff_rad_s"] / summaries[0]["g_eff_rad_s"]
    assert ratio == pytest.approx(2.0, rel=1e-9)
    for entry in manifest["entries"]:
        assert (out_dir / entry["grid_csv"]).exists()
        assert (out_dir / entry["grid_sidecar"]).exists()


def test_sweep_unknown_param():
    assert main(["sweep", "--param", "pump.bogus", "--values", "1"]) == 2


def test_validate_ok(capsys):
    assert main(["validate"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["ok"] is True
    assert report["scenario"]["pump"]["sites"] == 23


def test_bad_config_exit_code(tmp_path, capsys):
    cfg = tmp_path / "bad.yaml"
    cfg.write_text("pump:\n  bogus: 1\n")
    assert main(["validate", "--config", str(cfg)]) == 2


def test_missing_config_exit_code():
    assert main(["selection", "--config", "/no/such/file.yaml"]) == 2


def test_seed_override(tmp_path):
    out = tmp_path / "v.json"
    assert main(["validate", "--seed", "99", "--out", str(out)]) == 0
    assert _load_report(out)["scenario"]["seed"] == 99


def test_unwritable_output_exit_code(tmp_path):
    target = tmp_path / "no_dir" / "out.json"
    assert main(["selection", "--out", str(target)]) == 4
