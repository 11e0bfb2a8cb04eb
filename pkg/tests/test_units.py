import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from rydmol.errors import DimensionError
from rydmol.units import (
    A0,
    CONSTANTS_VERSION,
    MU_B_MHZ_PER_G,
    UNITS,
    Dimension,
    Quantity,
    as_au,
    convert,
    from_au,
    to_au,
)


def test_constants_table_is_versioned():
    assert CONSTANTS_VERSION.startswith("codata-2018")
    assert A0 == pytest.approx(5.29177210903e-11, rel=1e-15)


def test_debye_in_atomic_units():
    assert Quantity(1.0, "debye").to("au_dipole").value == pytest.approx(0.393430, rel=1e-5)


def test_atomic_field_in_v_per_cm():
    assert Quantity(1.0, "au_field").to("V/cm").value == pytest.approx(5.14220675e9, rel=1e-8)


def test_bohr_magneton_mhz_per_gauss():
    assert MU_B_MHZ_PER_G == pytest.approx(1.39962449, rel=1e-8)


def test_angular_rabi_frequency_in_au():
    w = as_au(Quantity(2 * math.pi * 100e3, "rad/s"), Dimension.ANGULAR_FREQUENCY)
    assert w == pytest.approx(1.5198e-11, rel=1e-4)


def test_cyclic_and_angular_frequency_are_distinct():
    # 1 Hz of energy equals 2 pi rad/s
    assert Quantity(1.0, "Hz").to("rad/s").value == pytest.approx(2 * math.pi, rel=1e-14)


def test_mhz_to_hartree():
    assert Quantity(1.0, "MHz").to("hartree").value == pytest.approx(1.519829846e-10, rel=1e-9)


def test_incompatible_dimensions_raise():
    with pytest.raises(DimensionError):
        convert(Quantity(1.0, "nm"), "MHz")
    with pytest.raises(DimensionError):
        as_au(Quantity(1.0, "G"), Dimension.LENGTH)


def test_unknown_unit_raises():
    with pytest.raises(DimensionError):
        Quantity(1.0, "furlong")


def test_bare_numbers_are_atomic_units():
    assert as_au(3.5, Dimension.LENGTH) == 3.5


def test_array_conversion():
    x = np.array([1.0, 2.0, 3.0])
    np.testing.assert_allclose(from_au(to_au(x, "nm"), "nm"), x, rtol=1e-15)


_UNIT_NAMES = sorted(UNITS)


@given(st.sampled_from(_UNIT_NAMES), st.floats(min_value=-1e12, max_value=1e12,
                                               allow_nan=False, allow_infinity=False))
def test_round_trip_through_atomic_units(unit, value):
    back = from_au(to_au(value, unit), unit)
    assert back == pytest.approx(value, rel=1e-12, abs=1e-300)


@given(st.data())
def test_round_trip_between_compatible_units(data):
    a = data.draw(st.sampled_from(_UNIT_NAMES))
    dim = UNITS[a][0]
    family = {Dimension.ENERGY, Dimension.FREQUENCY, Dimension.ANGULAR_FREQUENCY}
    compatible = [u for u in _UNIT_NAMES
                  if UNITS[u][0] == dim or (dim in family and UNITS[u][0] in family)]
    b = data.draw(st.sampled_from(compatible))
    v = data.draw(st.floats(min_value=1e-6, max_value=1e6))
    q = Quantity(v, a)
    assert q.to(b).to(a).value == pytest.approx(v, rel=1e-12)
