"""Register-level protocols: |L>,|R> preparation, entanglement swapping, repeater chains."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import PreconditionError, SchemaError
from .core import CompositeSystem, PureState

_SQ2 = 1.0 / math.sqrt(2.0)


def qubit_register(names) -> CompositeSystem:
    return CompositeSystem([(n, ("0", "1")) for n in names])


def bell_state(kind: str, names=("q3", "q4")) -> PureState:
    """One of phi+, phi-, psi+, psi- on a two-qubit register."""
    sys = qubit_register(names)
    table = {
        "phi+": {("0", "0"): 1, ("1", "1"): 1},
        "phi-": {("0", "0"): 1, ("1", "1"): -1},
        "psi+": {("0", "1"): 1, ("1", "0"): 1},
        "psi-": {("0", "1"): 1, ("1", "0"): -1},
    }
    return sys.superposition(table[kind])


def prepare_lr_superposition(state: PureState, subsystem="molecule", f="f", e="e") -> PureState:
    """Hadamard on the (f, e) doublet: |f> -> |L> = (|f>+|e>)/sqrt2, |e> -> |R> = (|f>-|e>)/sqrt2."""
    sys = state.system
    sys.level_index(subsystem, f)
    sys.level_index(subsystem, e)
    k = sys.subsystem_index(subsystem)
    stride = int(np.prod(sys.dims[k + 1:]))
    i_f, i_e = sys.level_index(subsystem, f), sys.level_index(subsystem, e)
    a = state.amplitudes.copy()
    src_f = np.nonzero(sys.occupation(subsystem, f))[0]
    src_e = src_f + (i_e - i_f) * stride
    af, ae = a[src_f].copy(), a[src_e].copy()
    a[src_f] = _SQ2 * (af + ae)
    a[src_e] = _SQ2 * (af - ae)
    return PureState(a, sys)


@dataclass(frozen=True)
class SwapOutcome:
    outcome: str          # "++", "+-", "-+" or "--" for qubits 1, 2
    probability: float
    state: PureState | None  # normalised state of qubits 3, 4 (None if probability 0)


def _cnot(psi: np.ndarray, control: int, target: int, n: int) -> np.ndarray:
    psi = psi.reshape((2,) * n).copy()
    idx = [slice(None)] * n
    idx[control] = 1
    sub = psi[tuple(idx)]
    t_axis = target if target < control else target - 1
    psi[tuple(idx)] = np.flip(sub, axis=t_axis)
    return psi.reshape(-1)


def entanglement_swap(state: PureState) -> list[SwapOutcome]:
    """CNOT(1->3), CNOT(2->4), then measure qubits 1, 2 in the |+->, |-> basis.

    All four outcomes are returned with their probabilities and the
    normalised post-measurement state of qubits 3, 4.

    Raises
    ------
    PreconditionError
        If the input norm differs from 1 by more than 1e-9.
    """
    sys = state.system
    if sys.dims != (2, 2, 2, 2) or any(s.levels != ("0", "1") for s in sys.subsystems):
        raise SchemaError("entanglement swap needs four qubits with levels ('0', '1')")
    if abs(state.norm() - 1.0) > 1e-9:
        raise PreconditionError(f"input norm {state.norm():.12f} is not 1")
    psi = _cnot(state.amplitudes, 0, 2, 4)
    psi = _cnot(psi, 1, 3, 4).reshape(2, 2, 4)
    plus, minus = np.array([_SQ2, _SQ2]), np.array([_SQ2, -_SQ2])
    out_sys = CompositeSystem(sys.subsystems[2:])
    results = []
    for label, v1 in (("+", plus), ("-", minus)):
        for label2, v2 in (("+", plus), ("-", minus)):
            post = np.einsum("i,j,ijk->k", v1.conj(), v2.conj(), psi)
            p = float(np.vdot(post, post).real)
            st = PureState(post / math.sqrt(p), out_sys) if p > 1e-300 else None
            results.append(SwapOutcome(label + label2, p, st))
    return results


def sample_swap(state: PureState, rng: np.random.Generator) -> SwapOutcome:
    """Draw one measurement outcome; `rng` makes the draw reproducible."""
    outcomes = entanglement_swap(state)
    p = np.array([o.probability for o in outcomes])
    return outcomes[int(rng.choice(len(outcomes), p=p / p.sum()))]


def product_model(gate_fidelity=1.0):
    """Swap fidelity model F_out = F1 * F2 * F_gate."""
    return lambda f1, f2: f1 * f2 * gate_fidelity


def repeater_chain(num_links: int, swap_fidelity_model=None, elementary_fidelity=1.0,
                   gate_fidelity=1.0) -> float:
    """Fidelity of the end-to-end pair after nested swapping of `num_links` pairs.

    Pairs are joined along a binary tree. When `num_links` is not a power of
    two the tree leans left: a segment of n links splits into ``n - n//2``
    (left) and ``n//2`` (right).
    """
    if num_links < 1:
        raise PreconditionError("need at least one link")
    model = swap_fidelity_model or product_model(gate_fidelity)

    def fold(n):
        if n == 1:
            return elementary_fidelity
        return model(fold(n - n // 2), fold(n // 2))

    return float(fold(num_links))
