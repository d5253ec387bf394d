import pytest

from vbragg.errors import ValidationError
from vbragg.selection import (ChannelSet, ResonatorSpec, WGMMode,
                              _integers_strictly_between, dfg_channel_order,
                              dfg_channel_set, dfg_output_wavelength,
                              dfg_window, effective_index, fringe_order,
                              sfg_channel_set, sfg_output_wavelength,
                              sfg_window)

RING = ResonatorSpec(radius_um=1.6)
MODE = WGMMode(azimuthal_order=21)
WRITE_RING = ResonatorSpec(radius_um=1.66)


def test_dfg_wavelength_reference():
    assert dfg_output_wavelength(736.0, 1623.0) == pytest.approx(
        1346.705749718151, rel=1e-12)


def test_dfg_wavelength_second_point():
    # independent oracle: 739 * 1623 / (1623 - 739)
    assert dfg_output_wavelength(739.0, 1623.0) == pytest.approx(
        739.0 * 1623.0 / 884.0, rel=1e-12)


def test_dfg_wavelength_ordering_error():
    with pytest.raises(ValidationError):
        dfg_output_wavelength(1623.0, 736.0)


def test_sfg_wavelength_closes_energy():
    lam3 = dfg_output_wavelength(736.0, 1623.0)
    assert sfg_output_wavelength(1623.0, lam3) == pytest.approx(736.0, rel=1e-12)


def test_effective_index_reference():
    assert effective_index(21, 736.0, 1.6) == pytest.approx(
        1.5374367502677089, rel=1e-12)


def test_open_interval_integers():
    assert _integers_strictly_between(-1.5, 1.5) == [-1, 0, 1]
    # boundary-exact integers are excluded
    assert _integers_strictly_between(-1.0, 1.0) == [0]
    assert _integers_strictly_between(0.2, 0.8) == []
    assert _integers_strictly_between(2.0, 1.0) == []


def test_dfg_window_reference_scenario():
    lam3 = dfg_output_wavelength(736.0, 1623.0)
    for helicity in ("R", "L"):
        assert dfg_window(RING, 21, 23, lam3, "cw", helicity) == [-1]
        assert dfg_window(RING, 21, 23, lam3, "ccw", helicity) == [1]


def test_dfg_channel_orders():
    # m = ell*N + dir*M + sigma*2
    assert dfg_channel_order(21, 23, -1, "cw", "R") == 0
    assert dfg_channel_order(21, 23, -1, "cw", "L") == -4
    assert dfg_channel_order(21, 23, 1, "ccw", "R") == 4
    assert dfg_channel_order(21, 23, 1, "ccw", "L") == 0


def test_dfg_channel_set_assembles_all_windows():
    cs = dfg_channel_set(RING, MODE, 23, 1623.0)
    assert cs.lambda3_nm == pytest.approx(1346.705749718151)
    assert sorted(c.m for c in cs.channels) == [-4, 0, 0, 4]
    assert [c.ell for c in cs.by_channel("cw", "R")] == [-1]
    assert [c.ell for c in cs.by_channel("ccw", "L")] == [1]


def test_energy_conservation_enforced():
    with pytest.raises(ValidationError):
        ChannelSet(n_sites=23, mode=MODE, channels=(),
                   lambda2_nm=1623.0, lambda3_nm=1500.0)


def test_sfg_window_reference_scenario():
    # write-in geometry: R = 1.66 um, output near 737 nm
    assert sfg_window(WRITE_RING, 23, 737.0, "cw", "R") == [(1, 25)]
    assert sfg_window(WRITE_RING, 23, 737.0, "cw", "L") == [(1, 21)]
    assert sfg_window(WRITE_RING, 23, 737.0, "ccw", "R") == [(-1, 21)]
    assert sfg_window(WRITE_RING, 23, 737.0, "ccw", "L") == [(-1, 25)]


def test_sfg_channel_set_shape():
    channels = sfg_channel_set(WRITE_RING, 23, 737.0)
    assert set(channels) == {(d, h) for d in ("cw", "ccw") for h in ("R", "L")}
    guided_orders = {m for pairs in channels.values() for _, m in pairs}
    assert guided_orders == {21, 25}


@pytest.mark.parametrize("n_sites, delta_m, on_axis", [
    (19, 4, True), (20, 2, False), (21, 0, False), (22, 2, False),
    (23, 4, True), (25, 8, False), (27, 12, False),
])
def test_fringe_orders(n_sites, delta_m, on_axis):
    assert fringe_order(21, n_sites, 1) == (2 * abs(21 - n_sites), on_axis)
    assert fringe_order(21, n_sites, 1)[0] == delta_m


def test_resonator_validation():
    with pytest.raises(ValidationError):
        ResonatorSpec(radius_um=-1.0)
    with pytest.raises(ValidationError):
        ResonatorSpec(radius_um=1.6, n_core=1.0, n_out=1.0)
