"""
Entanglement swapping between molecular qubits
===============================================

Two Bell pairs (1,3) and (2,4) become one pair (3,4) after CNOTs 1->3 and
2->4 and a measurement of qubits 1 and 2 in the +/- basis. Pairs joined this
way along a chain give a repeater; the end-to-end fidelity follows from a
simple swap model.
"""

import numpy as np

from rydmol.quantum_engine import (
    bell_state,
    entanglement_swap,
    qubit_register,
    repeater_chain,
    sample_swap,
)

reg = qubit_register(["q1", "q2", "q3", "q4"])
psi = reg.superposition({("0", "0", "0", "0"): 1, ("1", "1", "0", "0"): 1})

# %%
phi_p, phi_m = bell_state("phi+").amplitudes, bell_state("phi-").amplitudes
for o in entanglement_swap(psi):
    fp = abs(np.vdot(phi_p, o.state.amplitudes)) ** 2
    fm = abs(np.vdot(phi_m, o.state.amplitudes)) ** 2
    print(f"{o.outcome}: p = {o.probability:.3f}   |<phi+|34>|^2 = {fp:.3f}   |<phi-|34>|^2 = {fm:.3f}")

# %%
# Seeded sampling for Monte Carlo use.
rng = np.random.default_rng(1)
print([sample_swap(psi, rng).outcome for _ in range(8)])

# %%
for links in (1, 2, 4, 8, 16):
    print(links, round(repeater_chain(links, elementary_fidelity=0.99, gate_fidelity=0.99), 4))
