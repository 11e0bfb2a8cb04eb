"""Rydberg electron radial wavefunctions and the shielded-core electric field.

The radial equation is solved for a pure Coulomb potential at the
quantum-defect shifted energy ``-1 / (2 (n - delta)**2)``. Integration runs
inward with Numerov's method on a square-root grid ``r = x**2``, where the
reduced function ``X = u / sqrt(x)`` obeys::

    X'' = [8 x**2 (V(r) - E) + (2l + 1/2)(2l + 3/2) / x**2] X

For non-integer effective quantum numbers the inward solution is irregular
at the origin; everything inside its innermost node is the ionic core region
and is set to zero. The nodes absorbed by the core are not counted, so a
level with defect ``delta`` carries ``ceil(n - delta - l - 1)`` sign changes.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path

import numpy as np
from scipy.interpolate import CubicSpline, PPoly

from .errors import PhysicsDomainError, SolverError, UnsupportedStateError
from .units import Dimension, as_au


@dataclass(frozen=True)
class RydbergLevel:
    n: int
    l: int = 0
    quantum_defect: float = 0.0

    def __post_init__(self):
        if self.n < 1 or not (0 <= self.l < self.n):
            raise PhysicsDomainError(f"invalid (n, l) = ({self.n}, {self.l})")
        if self.quantum_defect < 0:
            raise PhysicsDomainError("quantum defect must be non-negative")
        if self.n_eff <= self.l:
            raise PhysicsDomainError(
                f"effective n* = {self.n_eff:g} must exceed l = {self.l}"
            )

    @property
    def n_eff(self) -> float:
        return self.n - self.quantum_defect

    @property
    def energy(self) -> float:
        """Binding energy in hartree."""
        return -0.5 / self.n_eff**2

    @property
    def expected_nodes(self) -> int:
        return math.ceil(self.n_eff - self.l - 1 - 1e-9)

    @property
    def outer_turning_point(self) -> float:
        ns = self.n_eff
        return ns**2 + ns * math.sqrt(max(ns**2 - self.l * (self.l + 1), 0.0))


@dataclass(frozen=True)
class GridSpec:
    """Square-root grid parameters.

    ``r_max=None`` picks ``max(3 n*^2, 2 n*^2 + 30 n*)``, far enough into
    the forbidden region for the tail to fall below 1e-6 of the peak.
    """

    r_min: float = 1e-8
    r_max: float | None = None
    points_per_unit: float = 200.0
    min_points: int = 2000

    def radii(self, level: RydbergLevel) -> np.ndarray:
        ns = level.n_eff
        r_max = self.r_max or max(3.0 * ns**2, 2.0 * ns**2 + 30.0 * ns)
        if r_max <= self.r_min:
            raise PhysicsDomainError("grid r_max must exceed r_min")
        x0, x1 = math.sqrt(self.r_min), math.sqrt(r_max)
        npts = max(self.min_points, int(math.ceil((x1 - x0) * self.points_per_unit)) + 1)
        return np.linspace(x0, x1, npts) ** 2


@dataclass(frozen=True)
class RadialWavefunction:
    """Normalised reduced radial wavefunction ``u(r) = r R(r)``.

    `u` is positive in the outermost lobe.
    """

    r_grid: np.ndarray
    u: np.ndarray
    level: RydbergLevel

    @property
    def x_grid(self) -> np.ndarray:
        return np.sqrt(self.r_grid)

    @cached_property
    def _enclosed(self) -> PPoly:
        return _enclosed_probability_ppoly(self.x_grid, self.u)

    def enclosed_probability(self, r):
        """P(r) = integral of u**2 from the grid start to `r`."""
        x = np.sqrt(np.asarray(r, dtype=float))
        return np.clip(self._enclosed(x), 0.0, 1.0)

    def norm(self) -> float:
        return float(self._enclosed(self.x_grid[-1]))

    def node_count(self) -> int:
        s = np.sign(self.u[self.u != 0.0])
        return int(np.count_nonzero(s[1:] != s[:-1]))

    def expectation_r(self) -> float:
        x = self.x_grid
        return float(_simpson_uniform(self.u**2 * x**2 * 2.0 * x, x[1] - x[0]))

    def to_csv(self, path) -> None:
        with Path(path).open("w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["r_bohr", "u"])
            for r, u in zip(self.r_grid, self.u):
                w.writerow([repr(float(r)), repr(float(u))])


def _simpson_uniform(y: np.ndarray, h: float) -> float:
    from scipy.integrate import simpson

    return simpson(y, dx=h)


def _enclosed_probability_ppoly(x: np.ndarray, u: np.ndarray) -> PPoly:
    # Square the cubic interpolant of u exactly and weight by dr = 2x dx; the
    # degree-7 integrand is non-negative, so its antiderivative is monotone.
    cs = CubicSpline(x, u)
    c = cs.c  # (4, m), highest power first, local variable t = x - x_i
    m = c.shape[1]
    sq = np.zeros((7, m))
    for i in range(4):
        for j in range(4):
            sq[i + j] += c[i] * c[j]
    dens = np.zeros((8, m))
    dens[:7] += 2.0 * sq            # 2t * u^2
    dens[1:] += 2.0 * x[:-1] * sq   # 2x_i * u^2
    return PPoly(dens, x).antiderivative()


def _numerov_inward(x: np.ndarray, g: np.ndarray) -> np.ndarray:
    h = x[1] - x[0]
    f = 1.0 - h * h * g / 12.0
    n = len(x)
    X = np.zeros(n)
    X[-1] = 1e-30
    X[-2] = 1e-30 * math.exp(h * math.sqrt(max(g[-1], 0.0)))
    for i in range(n - 2, 0, -1):
        X[i - 1] = ((12.0 - 10.0 * f[i]) * X[i] - f[i + 1] * X[i + 1]) / f[i - 1]
        if abs(X[i - 1]) > 1e200:
            X[i - 1 :] *= 1e-200
    return X


def solve_radial(level: RydbergLevel, grid: GridSpec | None = None) -> RadialWavefunction:
    """Solve for the reduced radial function of `level`.

    Raises
    ------
    SolverError
        If the node count disagrees with the level (grid too coarse or an
        inconsistent defect) or the norm cannot be formed.
    """
    grid = grid or GridSpec()
    r = grid.radii(level)
    x = np.sqrt(r)
    l = level.l
    g = 8.0 * x**2 * (-1.0 / r - level.energy) + (4.0 * l * (l + 1) + 0.75) / x**2
    X = _numerov_inward(x, g)
    u = X * np.sqrt(x)

    if l > 0:
        # inside the centrifugal barrier the regular solution decays inward;
        # the first inward growth is the irregular solution taking over
        ns = level.n_eff
        r_in = ns**2 - ns * math.sqrt(ns**2 - l * (l + 1))
        k = int(np.searchsorted(r, r_in))
        a = np.abs(u[: k + 1])
        bad = np.nonzero((a[:-1] > a[1:]) | (a[:-1] < 1e-7 * np.max(np.abs(u))))[0]
        if len(bad):
            u[: bad[-1] + 1] = 0.0

    nu = level.n_eff
    if abs(nu - round(nu)) > 1e-9:
        s = np.sign(u)
        flips = np.nonzero(s[1:] != s[:-1])[0]
        if len(flips) == 0:
            raise SolverError(f"no core node found for {level}")
        u[: flips[0] + 1] = 0.0

    u = u / np.max(np.abs(u))
    norm = float(_enclosed_probability_ppoly(x, u)(x[-1]))
    if not np.isfinite(norm) or norm <= 0.0:
        raise SolverError(f"cannot normalise wavefunction for {level}")
    u = u / math.sqrt(norm)
    u.setflags(write=False)
    r.setflags(write=False)
    wf = RadialWavefunction(r, u, level)

    nodes = wf.node_count()
    if nodes != level.expected_nodes:
        raise SolverError(
            f"{level}: found {nodes} nodes, expected {level.expected_nodes}"
        )
    return wf


def shielded_core_field(wf: RadialWavefunction, R):
    """Electric field of the screened ionic core at distance `R` (a.u.).

    For an s electron Gauss's law reduces the angular matrix element to the
    charge not enclosed by the sphere of radius `R`::

        F(R) = (1 - P_enc(R)) / R**2

    The returned value is non-negative and points from core to molecule.
    `R` may be a length :class:`~rydmol.units.Quantity`, a float or an array
    in bohr.
    """
    if wf.level.l != 0:
        raise UnsupportedStateError("shielded-core field is defined for s states only")
    R = np.asarray(as_au(R, Dimension.LENGTH) if not isinstance(R, np.ndarray) else R, float)
    lo, hi = wf.r_grid[0], wf.r_grid[-1]
    if np.any(R < lo) or np.any(R > hi):
        raise PhysicsDomainError(f"R outside wavefunction grid [{lo:g}, {hi:g}] bohr")
    field = (1.0 - wf.enclosed_probability(R)) / R**2
    return float(field) if field.ndim == 0 else field
