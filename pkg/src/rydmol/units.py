"""Conversions between Hartree atomic units and laboratory units.

Everything inside rydmol is computed in atomic units. Laboratory values
enter and leave through :class:`Quantity` and :func:`convert`.

Energy, frequency and angular frequency form one family and interconvert
through E = h*nu = hbar*omega.

.. note::
   Rabi frequencies that enter the blockade scaling laws are *angular*
   frequencies. ``Quantity(2 * pi * 100e3, "rad/s")`` is the 100 kHz drive
   that reproduces the quoted blockade radii; ``Quantity(100e3, "Hz")`` is a
   different (2*pi smaller) coupling once converted.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from enum import Enum
from importlib import resources
from types import MappingProxyType

from .errors import DimensionError


def _load_constants():
    text = resources.files("rydmol").joinpath("data/constants.json").read_text()
    doc = json.loads(text)
    return doc["version"], {c["name"]: float(c["value"]) for c in doc["constants"]}


CONSTANTS_VERSION, _C = _load_constants()
CONSTANTS = MappingProxyType(_C)

H = _C["planck_constant"]
HBAR = H / (2.0 * math.pi)
E_CHARGE = _C["elementary_charge"]
C_LIGHT = _C["speed_of_light"]
A0 = _C["bohr_radius"]
E_H = _C["hartree_energy"]
MU_B = _C["bohr_magneton"]
DEBYE = _C["debye"]

T_AU = HBAR / E_H                      # s
F_AU = E_H / (E_CHARGE * A0)           # V/m
D_AU = E_CHARGE * A0                   # C m
B_AU = HBAR / (E_CHARGE * A0**2)       # T

#: Bohr magneton over h, MHz per gauss.
MU_B_MHZ_PER_G = MU_B * 1e-4 / H / 1e6


class Dimension(str, Enum):
    ENERGY = "energy"
    FREQUENCY = "frequency"
    ANGULAR_FREQUENCY = "angular_frequency"
    LENGTH = "length"
    ELECTRIC_DIPOLE = "electric_dipole"
    ELECTRIC_FIELD = "electric_field"
    MAGNETIC_FIELD = "magnetic_field"
    TIME = "time"
    DIMENSIONLESS = "dimensionless"


_ENERGY_FAMILY = {Dimension.ENERGY, Dimension.FREQUENCY, Dimension.ANGULAR_FREQUENCY}

# unit -> (dimension, value of one unit in atomic units)
_UNITS: dict[str, tuple[Dimension, float]] = {
    # energy family
    "hartree": (Dimension.ENERGY, 1.0),
    "J": (Dimension.ENERGY, 1.0 / E_H),
    "eV": (Dimension.ENERGY, E_CHARGE / E_H),
    "Hz": (Dimension.FREQUENCY, H / E_H),
    "kHz": (Dimension.FREQUENCY, 1e3 * H / E_H),
    "MHz": (Dimension.FREQUENCY, 1e6 * H / E_H),
    "GHz": (Dimension.FREQUENCY, 1e9 * H / E_H),
    "rad/s": (Dimension.ANGULAR_FREQUENCY, HBAR / E_H),
    "au_angular_frequency": (Dimension.ANGULAR_FREQUENCY, 1.0),
    # length
    "bohr": (Dimension.LENGTH, 1.0),
    "m": (Dimension.LENGTH, 1.0 / A0),
    "cm": (Dimension.LENGTH, 1e-2 / A0),
    "mm": (Dimension.LENGTH, 1e-3 / A0),
    "um": (Dimension.LENGTH, 1e-6 / A0),
    "nm": (Dimension.LENGTH, 1e-9 / A0),
    # dipole
    "au_dipole": (Dimension.ELECTRIC_DIPOLE, 1.0),
    "C m": (Dimension.ELECTRIC_DIPOLE, 1.0 / D_AU),
    "debye": (Dimension.ELECTRIC_DIPOLE, DEBYE / D_AU),
    "kilodebye": (Dimension.ELECTRIC_DIPOLE, 1e3 * DEBYE / D_AU),
    # electric field
    "au_field": (Dimension.ELECTRIC_FIELD, 1.0),
    "V/m": (Dimension.ELECTRIC_FIELD, 1.0 / F_AU),
    "V/cm": (Dimension.ELECTRIC_FIELD, 1e2 / F_AU),
    # magnetic field
    "au_magnetic": (Dimension.MAGNETIC_FIELD, 1.0),
    "T": (Dimension.MAGNETIC_FIELD, 1.0 / B_AU),
    "G": (Dimension.MAGNETIC_FIELD, 1e-4 / B_AU),
    # time
    "au_time": (Dimension.TIME, 1.0),
    "s": (Dimension.TIME, 1.0 / T_AU),
    "ms": (Dimension.TIME, 1e-3 / T_AU),
    "us": (Dimension.TIME, 1e-6 / T_AU),
    "ns": (Dimension.TIME, 1e-9 / T_AU),
    # dimensionless
    "1": (Dimension.DIMENSIONLESS, 1.0),
}

UNITS = MappingProxyType(_UNITS)

# canonical atomic unit per dimension
AU_UNIT = {
    Dimension.ENERGY: "hartree",
    Dimension.FREQUENCY: "hartree",
    Dimension.ANGULAR_FREQUENCY: "au_angular_frequency",
    Dimension.LENGTH: "bohr",
    Dimension.ELECTRIC_DIPOLE: "au_dipole",
    Dimension.ELECTRIC_FIELD: "au_field",
    Dimension.MAGNETIC_FIELD: "au_magnetic",
    Dimension.TIME: "au_time",
    Dimension.DIMENSIONLESS: "1",
}


def unit_dimension(unit: str) -> Dimension:
    try:
        return _UNITS[unit][0]
    except KeyError:
        raise DimensionError(repr(unit), "a known unit") from None


def _compatible(a: Dimension, b: Dimension) -> bool:
    return a == b or (a in _ENERGY_FAMILY and b in _ENERGY_FAMILY)


@dataclass(frozen=True)
class Quantity:
    """A real value tagged with a unit from :data:`UNITS`."""

    value: float
    unit: str

    def __post_init__(self):
        unit_dimension(self.unit)

    @property
    def dimension(self) -> Dimension:
        return _UNITS[self.unit][0]

    def to(self, unit: str) -> "Quantity":
        return convert(self, unit)

    def au(self) -> float:
        """Value in atomic units (energies in hartree)."""
        return self.value * _UNITS[self.unit][1]

    def __str__(self):
        return f"{self.value:g} {self.unit}"


def convert(q: Quantity, target_unit: str) -> Quantity:
    """Express `q` in `target_unit`.

    Raises
    ------
    DimensionError
        If the target unit measures a different dimension.
    """
    src_dim, src_factor = _UNITS[q.unit]
    tgt_dim = unit_dimension(target_unit)
    if not _compatible(src_dim, tgt_dim):
        raise DimensionError(src_dim.value, tgt_dim.value)
    return Quantity(q.value * src_factor / _UNITS[target_unit][1], target_unit)


def to_au(value, unit: str):
    """Convert a plain number (or array) from `unit` to atomic units."""
    return value * _UNITS[unit][1]


def from_au(value, unit: str):
    """Convert a plain number (or array) from atomic units to `unit`."""
    return value / _UNITS[unit][1]


def as_au(x, dimension: Dimension) -> float:
    """Accept a Quantity (checked against `dimension`) or a bare number in a.u."""
    if isinstance(x, Quantity):
        if not _compatible(x.dimension, dimension):
            raise DimensionError(x.dimension.value, dimension.value)
        return x.au()
    return float(x)
