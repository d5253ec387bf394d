import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from vbragg.errors import ValidationError
from vbragg.farfield import (CoherencePair, FarFieldChannel, FarFieldGrid,
                             GridSpec, array_factor_dense,
                             array_factor_discrete, count_fringes,
                             design_channel_orders, intensity_isotropic,
                             intensity_map, phase_jitter_peak_drop, read_grid,
                             spatial_efficiency, write_grid)

K3 = 2.0 * math.pi / 1.3467  # rad/um at the read-out wavelength
RADIUS = 1.6


def test_discrete_matches_dense_when_oversampled():
    theta = np.deg2rad(np.linspace(0.0, 89.0, 40))
    phi = np.deg2rad(np.arange(0.0, 360.0, 5.0))
    tt, pp = np.meshgrid(theta, phi, indexing="ij")
    for m in (0, 1, -1, 4, -4):
        n = 50 * (abs(m) + 1)
        disc = array_factor_discrete(m, n, tt, pp, K3, RADIUS)
        dense = array_factor_dense(m, tt, pp, K3, RADIUS, n)
        assert np.max(np.abs(disc - dense)) < 0.02 * n


def test_dense_bessel_parity():
    theta = np.deg2rad(np.linspace(0.0, 60.0, 25))
    phi = np.zeros_like(theta)
    for m in (1, 3, 4, 7):
        plus = array_factor_dense(m, theta, phi, K3, RADIUS, 100)
        minus = array_factor_dense(-m, theta, phi, K3, RADIUS, 100)
        np.testing.assert_allclose(np.abs(plus), np.abs(minus), rtol=1e-12)


def test_discrete_scalar_input():
    val = array_factor_discrete(0, 10, 0.0, 0.0, K3, RADIUS)
    assert val == pytest.approx(10.0 + 0j)


def _channels(orders, pops):
    helicities = ("R", "R", "L", "L")
    return [FarFieldChannel(m, h, p)
            for m, h, p in zip(orders, helicities, pops)]


def test_intensity_map_peak_normalized():
    grid = GridSpec(theta_max_deg=30.0, theta_step_deg=0.5, phi_step_deg=2.0)
    channels = _channels(design_channel_orders(21, 23, 1), [0.25] * 4)
    coh = {"R": CoherencePair(0.25), "L": CoherencePair(0.25)}
    out = intensity_map(channels, coh, grid, K3, RADIUS)
    assert out.normalization == "peak"
    assert out.intensity.max() == pytest.approx(1.0)
    assert out.intensity.min() >= 0.0


def test_intensity_map_rejects_unphysical_coherence():
    grid = GridSpec(theta_max_deg=10.0, theta_step_deg=1.0, phi_step_deg=10.0)
    channels = _channels([0, 4, -4, 0], [0.1] * 4)
    with pytest.raises(ValidationError):
        intensity_map(channels, {"R": CoherencePair(0.5)}, grid, K3, RADIUS)


@settings(max_examples=25, deadline=None)
@given(st.floats(0.0, 1.0), st.floats(0.0, 1.0), st.floats(0.0, 1.0),
       st.floats(0.0, 2 * math.pi))
def test_intensity_nonnegative_at_coherence_bound(n_plus, n_minus, frac, psi):
    grid = GridSpec(theta_max_deg=20.0, theta_step_deg=2.0, phi_step_deg=15.0)
    channels = _channels([0, 4, -4, 0],
                         [n_plus, n_minus, n_minus, n_plus])
    bound = math.sqrt(n_plus * n_minus)
    coh = {"R": CoherencePair(frac * bound, psi),
           "L": CoherencePair(frac * bound, -psi)}
    out = intensity_map(channels, coh, grid, K3, RADIUS, normalization="raw")
    assert out.intensity.min() >= 0.0


def test_isotropic_order_relation_enforced():
    grid = GridSpec(theta_max_deg=10.0, theta_step_deg=1.0, phi_step_deg=10.0)
    with pytest.raises(ValidationError):
        intensity_isotropic(21, 23, (0, -4, 3, 0), grid, 1.0, K3, RADIUS)


def test_isotropic_map_fringe_count():
    grid = GridSpec(theta_max_deg=30.0, theta_step_deg=0.5, phi_step_deg=1.0)
    out = intensity_isotropic(21, 23, (0, -4, 4, 0), grid, 1.0, K3, RADIUS)
    ring = out.intensity[out.theta_deg.searchsorted(10.0), :]
    # the surrogate interferes the +/-Q orders, so its cos(2 Q phi) term
    # gives 2|Q| fringes; here Q- = 4
    assert count_fringes(ring) == 8


def test_count_fringes_synthetic():
    phi = np.deg2rad(np.arange(0, 360, 1.0))
    for k in (1, 2, 4, 8, 12):
        assert count_fringes(1.0 + np.cos(k * phi)) == k
    assert count_fringes(np.ones(360)) == 0
    assert count_fringes(np.zeros(360)) == 0


def test_design_channel_orders_reference():
    assert design_channel_orders(21, 23, 1) == [0, 4, -4, 0]
    assert design_channel_orders(21, 19, 1) == [4, 0, 0, -4]
    assert design_channel_orders(21, 21, 1) == [2, 2, -2, -2]


def test_phase_jitter_zero_sigma():
    assert phase_jitter_peak_drop(0.0, 200, (21, 23, 1), seed=1) == 0.0


def test_phase_jitter_deterministic_and_monotone():
    a = phase_jitter_peak_drop(5.0, 300, (21, 23, 1), seed=42)
    b = phase_jitter_peak_drop(5.0, 300, (21, 23, 1), seed=42)
    assert a == b
    drops = [phase_jitter_peak_drop(s, 300, (21, 23, 1), seed=42)
             for s in (2.0, 5.0, 10.0)]
    assert drops[0] < drops[1] < drops[2]


def test_phase_jitter_needs_on_axis_design():
    with pytest.raises(ValidationError):
        phase_jitter_peak_drop(5.0, 200, (21, 21, 1), seed=1)


def test_spatial_efficiency_uniform_oracle():
    # uniform emission: captured fraction is (1 - cos(theta_c)) / (1 - cos(max))
    theta = np.linspace(0.0, 90.0, 361)
    phi = np.deg2rad(np.arange(0, 360, 2.0))
    grid = FarFieldGrid(theta, phi, np.ones((theta.size, phi.size)), "raw")
    na = 0.5
    expected = 1.0 - math.cos(math.asin(na))
    assert spatial_efficiency(grid, na) == pytest.approx(expected, rel=1e-3)


def test_spatial_efficiency_grid_too_small():
    theta = np.linspace(0.0, 20.0, 81)
    phi = np.deg2rad(np.arange(0, 360, 5.0))
    grid = FarFieldGrid(theta, phi, np.ones((theta.size, phi.size)), "raw")
    with pytest.raises(ValidationError):
        spatial_efficiency(grid, 0.95)


def test_grid_round_trip(tmp_path):
    spec = GridSpec(theta_max_deg=10.0, theta_step_deg=2.0, phi_step_deg=30.0)
    channels = _channels(design_channel_orders(21, 23, 1), [0.25] * 4)
    coh = {"R": CoherencePair(0.25), "L": CoherencePair(0.25)}
    out = intensity_map(channels, coh, spec, K3, RADIUS,
                        metadata={"design_ell": 1})
    csv_path = tmp_path / "grid.csv"
    sidecar = write_grid(out, csv_path)
    assert sidecar.exists()
    loaded = read_grid(csv_path)
    np.testing.assert_array_equal(loaded.theta_deg, out.theta_deg)
    np.testing.assert_array_equal(loaded.intensity, out.intensity)
    assert loaded.metadata["design_ell"] == 1


def test_read_grid_rejects_wrong_schema(tmp_path):
    spec = GridSpec(theta_max_deg=4.0, theta_step_deg=2.0, phi_step_deg=90.0)
    channels = _channels([0, 4, -4, 0], [0.25] * 4)
    out = intensity_map(channels, {}, spec, K3, RADIUS)
    csv_path = tmp_path / "grid.csv"
    side = write_grid(out, csv_path)
    side.write_text(side.read_text().replace('"schema_version": 1',
                                             '"schema_version": 99'))
    with pytest.raises(ValidationError):
        read_grid(csv_path)


def test_grid_csv_header(tmp_path):
    spec = GridSpec(theta_max_deg=4.0, theta_step_deg=2.0, phi_step_deg=90.0)
    channels = _channels([0, 4, -4, 0], [0.25] * 4)
    out = intensity_map(channels, {}, spec, K3, RADIUS)
    csv_path = tmp_path / "grid.csv"
    write_grid(out, csv_path)
    first = csv_path.read_text().splitlines()[0]
    assert first == "theta_deg,phi_rad,intensity"
