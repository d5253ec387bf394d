import math

import pytest
from hypothesis import given, strategies as st

from vbragg.errors import OutOfRangeError, ValidationError
from vbragg.materials import (Chi2Tensor, DEFAULT_TABLE, MaterialTable,
                              contract_tensor, load_material_table,
                              lookup_index)


def test_exact_points():
    assert lookup_index("diamond", 736.0) == 2.41
    assert lookup_index("diamond", 1347.0) == 2.38
    assert lookup_index("LiNbO3", 1623.0) == 2.13


def test_linear_interpolation_midpoint():
    # halfway between 736 and 1347 nm for diamond
    assert lookup_index("diamond", 1041.5) == pytest.approx(2.395, abs=1e-12)


def test_extrapolation_is_an_error():
    with pytest.raises(OutOfRangeError):
        lookup_index("diamond", 500.0)
    with pytest.raises(OutOfRangeError):
        lookup_index("LiNbO3", 2000.0)


def test_unknown_material():
    with pytest.raises(ValidationError):
        lookup_index("silicon", 736.0)


def test_bad_entries_rejected():
    with pytest.raises(ValidationError):
        MaterialTable((("x", -1.0, 2.0, ""),))
    with pytest.raises(ValidationError):
        MaterialTable((("x", 736.0, 0.9, ""),))


def test_table_file_round_trip(tmp_path):
    path = tmp_path / "indices.csv"
    path.write_text(
        "# test table\n"
        "diamond, 736, 2.41, visible\n"
        "\n"
        "diamond, 1347, 2.38\n"
    )
    table = load_material_table(path)
    assert table.lookup_index("diamond", 736.0) == 2.41
    assert table.lookup_index("diamond", 1000.0) == pytest.approx(
        DEFAULT_TABLE.lookup_index("diamond", 1000.0))


def test_table_file_bad_line(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("diamond, 736\n")
    with pytest.raises(ValidationError):
        load_material_table(path)


def test_circular_contraction_values():
    circ = contract_tensor(Chi2Tensor())
    expected = math.sqrt((2.1e-12**2 + 4.3e-12**2) / 2.0)
    assert abs(circ.d_r) == pytest.approx(expected, rel=1e-12)
    assert abs(circ.d_l) == pytest.approx(expected, rel=1e-12)
    assert circ.d_r == pytest.approx(complex(2.1e-12, -4.3e-12) / math.sqrt(2))


@given(st.floats(-1e-10, 1e-10), st.floats(-1e-10, 1e-10))
def test_contraction_preserves_power(d22, d31):
    circ = contract_tensor(Chi2Tensor(d22=d22, d31=d31))
    assert abs(circ.d_r) ** 2 + abs(circ.d_l) ** 2 == pytest.approx(
        d22**2 + d31**2, rel=1e-9, abs=1e-40)


def test_rms_surrogate_differs_from_isotropic_value():
    t = Chi2Tensor()
    assert t.rms_surrogate() == pytest.approx(3.383784863137726e-12, rel=1e-12)
    # the configured isotropic surrogate is an order of magnitude larger
    assert t.chi_iso / t.rms_surrogate() > 10
