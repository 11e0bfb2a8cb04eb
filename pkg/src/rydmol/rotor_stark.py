"""Rigid rotor in the field of a Rydberg core and the resulting excitation shifts.

Only the m = 0 manifold is treated: the core-molecule axis defines z and the
dipole coupling conserves m.

Two diagonal conventions are available. ``"paper"`` uses
``b_rot * J(J+1) / 2`` so that ``b_rot`` is the J = 0 -> 1 splitting;
``"standard"`` uses the textbook ``b_rot * J(J+1)``.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .errors import LabelingError, PhysicsDomainError
from .rydberg_core import RadialWavefunction, shielded_core_field
from .species import species_defaults
from .units import Dimension, as_au, from_au, to_au

Convention = Literal["paper", "standard"]


@dataclass(frozen=True)
class RigidRotorSpec:
    """Rotor constants in atomic units."""

    b_rot: float
    d0: float
    j_max: int = 8
    convention: Convention = "paper"

    def __post_init__(self):
        if self.b_rot <= 0:
            raise PhysicsDomainError("b_rot must be positive")
        if self.d0 < 0:
            raise PhysicsDomainError("d0 must be non-negative")
        if self.j_max < 4:
            raise PhysicsDomainError("j_max must be at least 4")
        if self.convention not in ("paper", "standard"):
            raise PhysicsDomainError(f"unknown convention {self.convention!r}")

    @classmethod
    def from_lab(cls, b_rot_mhz, d0_debye=None, *, d0_au=None, j_max=8, convention="paper"):
        if (d0_debye is None) == (d0_au is None):
            raise ValueError("give exactly one of d0_debye, d0_au")
        d0 = to_au(d0_debye, "debye") if d0_au is None else d0_au
        return cls(to_au(b_rot_mhz, "MHz"), d0, j_max, convention)

    @classmethod
    def krb(cls, **overrides):
        """KRb defaults from the shipped species table."""
        p = species_defaults("krb") | overrides
        return cls.from_lab(p["b_rot_mhz"], d0_au=p["d0_au"], j_max=p["j_max"],
                            convention=p["convention"])

    def rotational_energy(self, J):
        J = np.asarray(J)
        scale = 0.5 if self.convention == "paper" else 1.0
        return scale * self.b_rot * J * (J + 1)

    @property
    def max_reported_j(self) -> int:
        return self.j_max - 3


@dataclass(frozen=True)
class StarkLevel:
    j: int
    shift: float    # a.u.
    mixing: float


@dataclass(frozen=True)
class ShiftCurve:
    """Net excitation shifts vs core-molecule separation.

    ``shifts_mhz[i, J]`` and ``mixing[i, J]`` belong to ``r_bohr[i]`` and the
    state whose dominant component is J.
    """

    r_bohr: np.ndarray
    shifts_mhz: np.ndarray
    mixing: np.ndarray

    @property
    def r_nm(self) -> np.ndarray:
        return from_au(self.r_bohr, "nm")

    @property
    def j_values(self) -> np.ndarray:
        return np.arange(self.shifts_mhz.shape[1])

    def to_rows(self, jmax_report: int | None = None):
        """Header and data rows for the CSV export."""
        nj = self.shifts_mhz.shape[1] if jmax_report is None else jmax_report + 1
        header = ["R_nm"]
        for J in range(nj):
            header += [f"shift_J{J}_MHz", f"mixing_J{J}"]
        rows = []
        for i, R in enumerate(self.r_nm):
            row = [float(R)]
            for J in range(nj):
                row += [float(self.shifts_mhz[i, J]), float(self.mixing[i, J])]
            rows.append(row)
        return header, rows


def cos_theta_element(J: int, Jp: int) -> float:
    """<J, 0| cos(theta) |J', 0>."""
    if abs(J - Jp) != 1:
        return 0.0
    k = max(J, Jp)
    return k / np.sqrt((2 * k - 1) * (2 * k + 1))


def build_hamiltonian(spec: RigidRotorSpec, F) -> np.ndarray:
    F = as_au(F, Dimension.ELECTRIC_FIELD)
    if F < 0:
        raise PhysicsDomainError("field magnitude must be non-negative")
    J = np.arange(spec.j_max + 1)
    H = np.diag(spec.rotational_energy(J).astype(float))
    off = np.array([-F * spec.d0 * cos_theta_element(j, j + 1) for j in J[:-1]])
    H += np.diag(off, 1) + np.diag(off, -1)
    return H


def stark_shifts(spec: RigidRotorSpec, F) -> list[StarkLevel]:
    """Field-induced shifts of the lowest ``j_max - 2`` rotor states.

    Each eigenstate is labelled by its dominant J (largest overlap, ties to the
    lower J); its shift is the eigenvalue minus that J's field-free energy.

    Raises
    ------
    LabelingError
        If a reported state has mixing >= 0.5.
    """
    H = build_hamiltonian(spec, F)
    w, v = np.linalg.eigh(H)
    weights = v**2
    out = []
    for k in range(spec.j_max - 2):
        col = weights[:, k]
        J = int(np.argmax(col))  # argmax returns the first (lowest J) on ties
        mixing = 1.0 - col[J]
        if mixing >= 0.5:
            raise LabelingError(f"eigenstate {k} has no dominant J (mixing {mixing:.3f})")
        out.append(StarkLevel(J, float(w[k] - spec.rotational_energy(J)), float(mixing)))
    return sorted(out, key=lambda s: s.j)


def shift_scan(spec: RigidRotorSpec, wf: RadialWavefunction, r_values, threads: int = 1) -> ShiftCurve:
    """Excitation shifts of the Rydberg line across core-molecule separations.

    With the atom in its ground state the molecule feels no field, so the
    shift of the Rydberg excitation equals the molecular level shift; a J = 0
    molecule lowers the line.
    """
    r_values = np.asarray([as_au(r, Dimension.LENGTH) for r in np.atleast_1d(r_values)]
                          if not isinstance(r_values, np.ndarray) else r_values, float)

    def row(R):
        try:
            levels = stark_shifts(spec, shielded_core_field(wf, R))
        except PhysicsDomainError as exc:
            raise type(exc)(f"at R = {R:g} bohr: {exc}") from exc
        by_j = {s.j: s for s in levels}
        if sorted(by_j) != list(range(len(levels))):
            raise LabelingError(f"at R = {R:g} bohr: duplicate dominant-J labels")
        return ([from_au(by_j[j].shift, "MHz") for j in range(len(levels))],
                [by_j[j].mixing for j in range(len(levels))])

    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            results = list(pool.map(row, r_values))
    else:
        results = [row(R) for R in r_values]
    shifts = np.array([r[0] for r in results])
    mixing = np.array([r[1] for r in results])
    return ShiftCurve(r_values, shifts, mixing)
