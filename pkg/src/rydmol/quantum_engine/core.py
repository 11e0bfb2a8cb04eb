"""Labelled composite Hilbert spaces and piecewise-constant pulse evolution.

Angular frequencies are in rad/s and times in seconds when given as bare
floats; :class:`~rydmol.units.Quantity` inputs are converted.

Rotating-frame Hamiltonian of a pulse driving ``level_a <-> level_b`` on one
subsystem (hbar = 1)::

    H = Omega/2 (e^{i phi} |b><a| + h.c.) - Delta |b><b|
        + sum_{(s, L)} shift_{s,L} |b><b| (x) |L><L|_s
        - i Gamma/2 * (number of Rydberg levels occupied)

The last term only appears when a decay rate is given; norm loss is then the
survival probability.
"""

from __future__ import annotations

import math
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from itertools import product

import numpy as np
from scipy.linalg import expm

from ..errors import PhysicsDomainError, PreconditionError, SchemaError
from ..units import Dimension, Quantity, as_au, from_au


def _rad_per_s(x) -> float:
    if isinstance(x, Quantity):
        return from_au(as_au(x, Dimension.ANGULAR_FREQUENCY), "rad/s")
    return float(x)


def _seconds(x) -> float:
    if isinstance(x, Quantity):
        return from_au(as_au(x, Dimension.TIME), "s")
    return float(x)


@dataclass(frozen=True)
class Subsystem:
    name: str
    levels: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "levels", tuple(str(l) for l in self.levels))
        if len(set(self.levels)) != len(self.levels):
            raise SchemaError(f"duplicate level labels in subsystem {self.name!r}")
        if not self.levels:
            raise SchemaError(f"subsystem {self.name!r} has no levels")


class CompositeSystem:
    """Tensor product of labelled subsystems.

    Basis states are ordered lexicographically with the first subsystem
    slowest. Levels listed in `rydberg` (pairs of subsystem name and label)
    decay when a decay rate is supplied; by default every level labelled
    ``"r"`` is a Rydberg level.
    """

    def __init__(self, subsystems, rydberg=None):
        subs = []
        for s in subsystems:
            subs.append(s if isinstance(s, Subsystem) else Subsystem(s[0], tuple(s[1])))
        names = [s.name for s in subs]
        if len(set(names)) != len(names):
            raise SchemaError("subsystem names must be unique")
        self.subsystems: tuple[Subsystem, ...] = tuple(subs)
        self.dims = tuple(len(s.levels) for s in subs)
        self.dimension = int(np.prod(self.dims))
        if self.dimension < 2:
            raise SchemaError("composite dimension must be at least 2")
        if rydberg is None:
            rydberg = {(s.name, "r") for s in subs if "r" in s.levels}
        for sub, lab in rydberg:
            self.level_index(sub, lab)
        self.rydberg = frozenset(rydberg)
        # level index of every subsystem for every basis state
        self._digits = np.array(list(product(*[range(d) for d in self.dims])), dtype=int)

    def __eq__(self, other):
        return (isinstance(other, CompositeSystem) and self.subsystems == other.subsystems
                and self.rydberg == other.rydberg)

    def __hash__(self):
        return hash((self.subsystems, self.rydberg))

    def __repr__(self):
        inner = ", ".join(f"{s.name}{list(s.levels)}" for s in self.subsystems)
        return f"CompositeSystem({inner})"

    def subsystem_index(self, name: str) -> int:
        for i, s in enumerate(self.subsystems):
            if s.name == name:
                return i
        raise SchemaError(f"unknown subsystem {name!r}")

    def level_index(self, subsystem: str, label) -> int:
        s = self.subsystems[self.subsystem_index(subsystem)]
        try:
            return s.levels.index(str(label))
        except ValueError:
            raise SchemaError(f"subsystem {subsystem!r} has no level {label!r}") from None

    def index(self, labels) -> int:
        """Basis index from a sequence of labels (one per subsystem) or a mapping."""
        if isinstance(labels, Mapping):
            labels = [labels[s.name] for s in self.subsystems]
        if len(labels) != len(self.subsystems):
            raise SchemaError(f"expected {len(self.subsystems)} labels, got {len(labels)}")
        idx = 0
        for s, d, lab in zip(self.subsystems, self.dims, labels):
            idx = idx * d + self.level_index(s.name, lab)
        return idx

    def labels(self, index: int) -> tuple[str, ...]:
        return tuple(s.levels[k] for s, k in zip(self.subsystems, self._digits[index]))

    def occupation(self, subsystem: str, label) -> np.ndarray:
        """Boolean mask over the basis: `subsystem` is in level `label`."""
        i = self.subsystem_index(subsystem)
        return self._digits[:, i] == self.level_index(subsystem, label)

    def rydberg_count(self) -> np.ndarray:
        n = np.zeros(self.dimension)
        for sub, lab in self.rydberg:
            n += self.occupation(sub, lab)
        return n

    def ket(self, *labels, **by_name) -> "PureState":
        key = by_name if by_name else labels
        v = np.zeros(self.dimension, complex)
        v[self.index(key)] = 1.0
        return PureState(v, self)

    def superposition(self, amplitudes: Mapping, normalize=True) -> "PureState":
        v = np.zeros(self.dimension, complex)
        for labels, a in amplitudes.items():
            v[self.index(labels)] += a
        if normalize:
            v /= np.linalg.norm(v)
        return PureState(v, self)


@dataclass(frozen=True, eq=False)
class PureState:
    amplitudes: np.ndarray
    system: CompositeSystem

    def __post_init__(self):
        a = np.array(self.amplitudes, dtype=complex)
        if a.shape != (self.system.dimension,):
            raise SchemaError(f"state has shape {a.shape}, system needs ({self.system.dimension},)")
        if np.linalg.norm(a) > 1 + 1e-12:
            raise PreconditionError("state norm exceeds 1")
        a.setflags(write=False)
        object.__setattr__(self, "amplitudes", a)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def amplitude(self, *labels, **by_name) -> complex:
        return complex(self.amplitudes[self.system.index(by_name if by_name else labels)])

    def population(self, subsystem: str, label) -> float:
        return float(self.probabilities()[self.system.occupation(subsystem, label)].sum())

    def inner(self, other: "PureState") -> complex:
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def with_phase(self, theta: float) -> "PureState":
        return PureState(self.amplitudes * np.exp(1j * theta), self.system)


@dataclass(frozen=True)
class Pulse:
    """One piecewise-constant drive segment.

    ``conditional_shift`` maps ``(other_subsystem, level)`` to an extra
    energy (rad/s) of `level_b` while the other subsystem occupies `level`.
    """

    subsystem: str
    level_a: str
    level_b: str
    rabi: float
    duration: float
    detuning: float = 0.0
    phase: float = 0.0
    conditional_shift: Mapping = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "rabi", _rad_per_s(self.rabi))
        object.__setattr__(self, "detuning", _rad_per_s(self.detuning))
        object.__setattr__(self, "duration", _seconds(self.duration))
        object.__setattr__(self, "conditional_shift",
                           {k: _rad_per_s(v) for k, v in dict(self.conditional_shift).items()})
        if self.duration < 0:
            raise PhysicsDomainError("pulse duration must be non-negative")
        if self.rabi < 0:
            raise PhysicsDomainError("Rabi frequency must be non-negative")

    @classmethod
    def with_area(cls, subsystem, level_a, level_b, rabi, area, **kw) -> "Pulse":
        """Pulse whose duration gives rotation angle `area` (radians) at `rabi`."""
        rabi = _rad_per_s(rabi)
        if rabi <= 0:
            raise PhysicsDomainError("area-specified pulse needs a positive Rabi frequency")
        return cls(subsystem, level_a, level_b, rabi, area / rabi, **kw)


def pulse_hamiltonian(system: CompositeSystem, pulse: Pulse, decay_rate=None) -> np.ndarray:
    """Rotating-frame Hamiltonian (rad/s) of `pulse` on the full composite space."""
    ia = system.level_index(pulse.subsystem, pulse.level_a)
    ib = system.level_index(pulse.subsystem, pulse.level_b)
    if ia == ib:
        raise SchemaError("pulse levels must differ")
    k = system.subsystem_index(pulse.subsystem)
    digits = system._digits
    in_b = digits[:, k] == ib

    diag = np.where(in_b, -pulse.detuning, 0.0).astype(complex)
    for (other, label), shift in pulse.conditional_shift.items():
        if other == pulse.subsystem:
            raise SchemaError("conditional shift must refer to another subsystem")
        diag += np.where(in_b & system.occupation(other, label), shift, 0.0)
    if decay_rate is not None:
        gamma = _rad_per_s(decay_rate)
        if gamma < 0:
            raise PhysicsDomainError("decay rate must be non-negative")
        diag += -0.5j * gamma * system.rydberg_count()

    H = np.diag(diag)
    # |b><a| couplings: same digits elsewhere, subsystem k moves a -> b
    stride = int(np.prod(system.dims[k + 1:]))
    src = np.nonzero(digits[:, k] == ia)[0]
    dst = src + (ib - ia) * stride
    c = 0.5 * pulse.rabi * np.exp(1j * pulse.phase)
    H[dst, src] += c
    H[src, dst] += np.conj(c)
    return H


def propagator(system: CompositeSystem, pulse: Pulse, decay_rate=None) -> np.ndarray:
    if pulse.duration == 0:
        return np.eye(system.dimension, dtype=complex)
    return expm(-1j * pulse.duration * pulse_hamiltonian(system, pulse, decay_rate))


def apply_pulse(state: PureState, pulse: Pulse, decay_rate=None) -> PureState:
    """Evolve `state` through `pulse` with the exact matrix exponential."""
    U = propagator(state.system, pulse, decay_rate)
    return PureState(U @ state.amplitudes, state.system)


def run_sequence(state: PureState, pulses: Sequence[Pulse], decay_rate=None) -> PureState:
    for p in pulses:
        state = apply_pulse(state, p, decay_rate)
    return state


def sequence_propagator(system: CompositeSystem, pulses: Sequence[Pulse], decay_rate=None) -> np.ndarray:
    U = np.eye(system.dimension, dtype=complex)
    for p in pulses:
        U = propagator(system, p, decay_rate) @ U
    return U


# -- pulse records in lab units ------------------------------------------------

_FREQ_SUFFIX = {"_hz": 1.0, "_khz": 1e3, "_mhz": 1e6, "_ghz": 1e9}
_TIME_SUFFIX = {"_s": 1.0, "_ms": 1e-3, "_us": 1e-6, "_ns": 1e-9}


def _lab_value(record, stem, table, scale, required=True, default=0.0):
    found = [(k, record[k]) for k in record if k.startswith(stem) and k[len(stem):] in table]
    if len(found) > 1:
        raise SchemaError(f"{stem} given twice: {[k for k, _ in found]}")
    if not found:
        if required:
            raise SchemaError(f"missing {stem}<unit> (one of {[stem + s for s in table]})")
        return default, None
    key, value = found[0]
    return float(value) * table[key[len(stem):]] * scale, key


def pulse_from_record(record: Mapping) -> Pulse:
    """Build a Pulse from a lab-unit record.

    Frequencies are cyclic (``rabi_khz: 100`` means Omega = 2 pi x 100 kHz);
    the duration is either ``duration_<s|ms|us|ns>`` or ``area_pi`` (pulse
    area in units of pi). Conditional shifts are a list of
    ``{subsystem, level, shift_<hz|khz|mhz|ghz>}`` records.
    """
    record = dict(record)
    used = {"subsystem", "level_a", "level_b", "phase_rad", "area_pi", "conditional_shift"}
    for key in ("subsystem", "level_a", "level_b"):
        if key not in record:
            raise SchemaError(f"pulse record missing {key!r}")
    two_pi = 2.0 * math.pi
    rabi, k1 = _lab_value(record, "rabi", _FREQ_SUFFIX, two_pi)
    detuning, k2 = _lab_value(record, "detuning", _FREQ_SUFFIX, two_pi, required=False)
    used |= {k1, k2}
    if "area_pi" in record:
        if any(k.startswith("duration") for k in record):
            raise SchemaError("give either area_pi or duration, not both")
        if rabi <= 0:
            raise SchemaError("area_pi needs a positive Rabi frequency")
        duration = float(record["area_pi"]) * math.pi / rabi
    else:
        duration, k3 = _lab_value(record, "duration", _TIME_SUFFIX, 1.0)
        used.add(k3)
    shifts = {}
    for item in record.get("conditional_shift", []):
        item = dict(item)
        val, k4 = _lab_value(item, "shift", _FREQ_SUFFIX, two_pi)
        extra = set(item) - {"subsystem", "level", k4}
        if extra:
            raise SchemaError(f"unknown keys in conditional_shift: {sorted(extra)}")
        shifts[(item["subsystem"], str(item["level"]))] = val
    unknown = set(record) - used
    if unknown:
        raise SchemaError(f"unknown pulse keys: {sorted(unknown)}")
    return Pulse(record["subsystem"], str(record["level_a"]), str(record["level_b"]),
                 rabi, duration, detuning, float(record.get("phase_rad", 0.0)), shifts)


def load_pulse_sequence(doc) -> list[Pulse]:
    """Pulses from a parsed config document (list of records, or ``{"pulses": [...]}``)."""
    if isinstance(doc, Mapping):
        if set(doc) != {"pulses"}:
            raise SchemaError("pulse document must have a single 'pulses' key")
        doc = doc["pulses"]
    return [pulse_from_record(r) for r in doc]
