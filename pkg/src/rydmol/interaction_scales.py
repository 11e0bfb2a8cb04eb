"""Closed-form interaction scales.

All laws are evaluated in atomic units. Inputs may be :class:`Quantity`
objects or bare numbers already in atomic units; outputs are Quantities.
Rabi frequencies are angular (see :mod:`rydmol.units`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import PhysicsDomainError
from .units import Dimension, Quantity, as_au, from_au

RYDBERG_DIPOLE_PREFACTOR = 1.3


@dataclass(frozen=True)
class ScalingInput:
    """Bundle of inputs for evaluating every law at once (used by the CLI)."""

    mu: Quantity | float = 0.0
    r: Quantity | float = 0.0
    t_gate: Quantity | float = 0.0
    omega: Quantity | float = 0.0
    n: int = 50
    a_coeff: float = 0.0
    b_coeff: float = 0.0

    def __post_init__(self):
        for name in ("mu", "r", "t_gate", "omega"):
            v = getattr(self, name)
            v = v.value if isinstance(v, Quantity) else v
            if v < 0:
                raise PhysicsDomainError(f"{name} must be non-negative")
        if not (0 <= self.a_coeff <= 1 and 0 <= self.b_coeff <= 1):
            raise PhysicsDomainError("mixing amplitudes must lie in [0, 1]")
        if self.a_coeff**2 + self.b_coeff**2 > 1 + 1e-12:
            raise PhysicsDomainError("|a|^2 + |b|^2 must not exceed 1")


def direct_ddi_strength(mu, r) -> Quantity:
    """Dipole-dipole coupling mu^2 / (hbar r^3) as an angular frequency."""
    mu = as_au(mu, Dimension.ELECTRIC_DIPOLE)
    r = as_au(r, Dimension.LENGTH)
    if r <= 0:
        raise PhysicsDomainError("separation must be positive")
    return Quantity(from_au(mu**2 / r**3, "rad/s"), "rad/s")


def gate_range(mu, t_gate) -> Quantity:
    """Separation at which the direct interaction gives a pi phase in `t_gate`."""
    mu = as_au(mu, Dimension.ELECTRIC_DIPOLE)
    t = as_au(t_gate, Dimension.TIME)
    if t <= 0:
        raise PhysicsDomainError("gate time must be positive")
    return Quantity(from_au((mu**2 * t / math.pi) ** (1.0 / 3.0), "nm"), "nm")


def lattice_capacity(beam_diameter, lattice_wavelength) -> int:
    """Number of lattice sites across a beam cross-section, floor((d / (lambda/2))^2)."""
    d = as_au(beam_diameter, Dimension.LENGTH)
    lam = as_au(lattice_wavelength, Dimension.LENGTH)
    if d <= 0 or lam <= 0:
        raise PhysicsDomainError("beam diameter and wavelength must be positive")
    ratio = (d / (lam / 2.0)) ** 2
    # guard floor() against 0.9999999 from unit round-off
    return int(math.floor(ratio * (1.0 + 1e-12)))


def _omega_au(omega) -> float:
    w = as_au(omega, Dimension.ANGULAR_FREQUENCY)
    if w <= 0:
        raise PhysicsDomainError("Rabi frequency must be positive")
    return w


def vdw_blockade_radius(n: int, omega) -> Quantity:
    """(C6 / Omega)^(1/6) with C6 ~ n^11 (a.u.)."""
    if n < 10:
        raise PhysicsDomainError("scaling estimate needs n >= 10")
    w = _omega_au(omega)
    return Quantity(from_au((float(n) ** 11 / w) ** (1.0 / 6.0), "um"), "um")


def ddi_blockade_radius(n: int, omega) -> Quantity:
    """(mu^2 / Omega)^(1/3) with mu ~ n^2 (a.u.)."""
    w = _omega_au(omega)
    mu = float(n) ** 2
    return Quantity(from_au((mu**2 / w) ** (1.0 / 3.0), "um"), "um")


def rydberg_molecule_dipole(a_coeff: float, n: int) -> Quantity:
    """Dipole moment 1.3 |a|^2 n^2 (a.u.) of a mixed Rydberg-molecule state."""
    if not 0 <= a_coeff <= 1:
        raise PhysicsDomainError("a_coeff must lie in [0, 1]")
    return Quantity(RYDBERG_DIPOLE_PREFACTOR * a_coeff**2 * float(n) ** 2, "au_dipole")
