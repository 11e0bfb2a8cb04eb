"""Hyperfine Zeeman structure of a ^2Pi_{3/2} Lambda doublet (CH) and magic fields.

Energies are in MHz and magnetic fields in gauss. Each parity component has
hyperfine levels F = J -+ 1/2 (nuclear spin 1/2) whose energies follow a
Breit-Rabi type expression::

    E = -dE/(2(2J+1)) + muB g m B
        +- |dE|/2 sqrt(1 - 4 muB g m B / (dE (2J+1)) + (muB g B / dE)**2)

For the e component the + root belongs to F = J - 1/2; for f it belongs to
F = J + 1/2 (the e hyperfine structure is inverted, dE_e < 0).

The f component is taken as the upper member of the doublet, so an e -> f
transition frequency is ``doublet_splitting + E_f - E_e``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Literal

import numpy as np
from scipy.optimize import bisect

from .errors import NotFoundError, PhysicsDomainError, SchemaError, SelectionRuleError
from .species import species_defaults
from .units import MU_B_MHZ_PER_G, Dimension, Quantity, as_au, from_au

Parity = Literal["f", "e"]

# which hyperfine level takes the + root, given parity: F = J + offset
_PLUS_ROOT_OFFSET = {"e": -0.5, "f": +0.5}
UPPER_PARITY = "f"


@dataclass(frozen=True)
class LambdaDoubletSpec:
    j: float = 1.5
    de_hf_f: float = 2.593          # MHz
    de_hf_e: float = -20.908        # MHz
    g_f: float = 0.819537
    g_e: float = 0.817829
    doublet_splitting: float = 700.0  # MHz
    transition_dipole: float = 1.47   # debye

    def __post_init__(self):
        if self.j <= 0 or abs(2 * self.j - round(2 * self.j)) > 1e-12:
            raise PhysicsDomainError("j must be a positive half-integer")
        if self.g_f <= 0 or self.g_e <= 0:
            raise PhysicsDomainError("g factors must be positive")

    @classmethod
    def ch(cls, **overrides) -> "LambdaDoubletSpec":
        p = species_defaults("ch")
        spec = cls(
            j=p["j"], de_hf_f=p["de_hf_f_mhz"], de_hf_e=p["de_hf_e_mhz"],
            g_f=p["g_f"], g_e=p["g_e"],
            doublet_splitting=p["doublet_splitting_mhz"],
            transition_dipole=p["transition_dipole_debye"],
        )
        return replace(spec, **overrides)

    def constants(self, parity: Parity) -> tuple[float, float]:
        if parity == "f":
            return self.de_hf_f, self.g_f
        if parity == "e":
            return self.de_hf_e, self.g_e
        raise SchemaError(f"parity must be 'f' or 'e', got {parity!r}")


@dataclass(frozen=True)
class HyperfineLevel:
    parity: Parity
    f_qn: float
    m_f: float

    def energy_at(self, B, spec: LambdaDoubletSpec | None = None) -> float:
        return zeeman_energy(spec or LambdaDoubletSpec.ch(), self.parity, self.f_qn, self.m_f, B)

    def __str__(self):
        return f"|F={self.f_qn:g},m={self.m_f:g},{self.parity}>"


def _field_gauss(B) -> float:
    if isinstance(B, Quantity):
        return from_au(as_au(B, Dimension.MAGNETIC_FIELD), "G")
    return B


def _check_level(spec, parity, f_qn, m_f):
    spec.constants(parity)
    if not any(abs(f_qn - (spec.j + s)) < 1e-12 for s in (-0.5, 0.5)):
        raise SchemaError(f"F = {f_qn} is not J -+ 1/2 for J = {spec.j}")
    if abs(m_f) > f_qn + 1e-12 or abs(m_f - round(m_f - f_qn) - f_qn) > 1e-12:
        raise SchemaError(f"m_F = {m_f} invalid for F = {f_qn}")


def zeeman_energy(spec: LambdaDoubletSpec, parity: Parity, f_qn, m_f, B) -> float:
    """Energy (MHz) of hyperfine level ``|F, m_F, parity>`` in field `B` (gauss).

    `B` may also be a magnetic-field Quantity; arrays of fields are accepted.
    """
    _check_level(spec, parity, f_qn, m_f)
    B = np.asarray(_field_gauss(B), dtype=float)
    if np.any(B < 0):
        raise PhysicsDomainError("magnetic field must be non-negative")
    de, g = spec.constants(parity)
    two_j1 = 2.0 * spec.j + 1.0
    x = MU_B_MHZ_PER_G * g * B
    radicand = 1.0 - 4.0 * x * m_f / (de * two_j1) + (x / de) ** 2
    # |m_F| = F_max touches zero at one field; absorb round-off there
    radicand = np.where((radicand < 0) & (radicand > -1e-12), 0.0, radicand)
    if np.any(radicand < 0):
        bad = np.atleast_1d(B)[np.atleast_1d(radicand) < 0][0]
        raise PhysicsDomainError(f"negative radicand at B = {bad:g} G")
    sign = 1.0 if abs(f_qn - (spec.j + _PLUS_ROOT_OFFSET[parity])) < 1e-12 else -1.0
    E = -de / (2.0 * two_j1) + x * m_f + sign * 0.5 * abs(de) * np.sqrt(radicand)
    return float(E) if E.ndim == 0 else E


def _offset(spec, level: HyperfineLevel) -> float:
    return spec.doublet_splitting if level.parity == UPPER_PARITY else 0.0


def transition_frequency(spec: LambdaDoubletSpec, level_a: HyperfineLevel,
                         level_b: HyperfineLevel, B) -> float:
    """Frequency (MHz) of the pi transition ``level_a -> level_b``.

    Raises
    ------
    SelectionRuleError
        If the two levels have different m_F.
    """
    if abs(level_a.m_f - level_b.m_f) > 1e-12:
        raise SelectionRuleError(
            f"pi transition needs equal m_F: {level_a} -> {level_b}"
        )
    Ea = zeeman_energy(spec, level_a.parity, level_a.f_qn, level_a.m_f, B) + _offset(spec, level_a)
    Eb = zeeman_energy(spec, level_b.parity, level_b.f_qn, level_b.m_f, B) + _offset(spec, level_b)
    return Eb - Ea


def frequency_slope(spec, level_a, level_b, B, step=1e-3) -> float:
    """d(nu)/dB in MHz/G by central difference with a 1 mG step."""
    B = _field_gauss(B)
    lo = max(B - step, 0.0)
    hi = B + step
    return (transition_frequency(spec, level_a, level_b, hi)
            - transition_frequency(spec, level_a, level_b, lo)) / (hi - lo)


def find_magic_field(spec: LambdaDoubletSpec, level_a: HyperfineLevel, level_b: HyperfineLevel,
                     b_range=(0.1, 10.0), scan_step=0.01, xtol=1e-4) -> float:
    """Lowest field in `b_range` where the transition is first-order field insensitive.

    The slope is bracketed on a coarse grid and the sign change refined by
    bisection to `xtol` gauss (0.1 mG by default).

    Raises
    ------
    NotFoundError
        If the slope keeps one sign over the whole range.
    """
    b0, b1 = (_field_gauss(b) for b in b_range)
    if not 0 <= b0 < b1:
        raise PhysicsDomainError(f"invalid field range {b_range}")
    npts = max(int(math.ceil((b1 - b0) / scan_step)) + 1, 3)
    grid = np.linspace(b0, b1, npts)
    slope = lambda b: frequency_slope(spec, level_a, level_b, b)
    s = np.array([slope(b) for b in grid])
    idx = np.nonzero(np.sign(s[:-1]) * np.sign(s[1:]) <= 0)[0]
    if len(idx) == 0:
        raise NotFoundError(
            f"no field-insensitive point for {level_a} -> {level_b} in [{b0:g}, {b1:g}] G"
        )
    i = idx[0]
    if s[i] == 0:
        return float(grid[i])
    return float(bisect(slope, grid[i], grid[i + 1], xtol=xtol))
