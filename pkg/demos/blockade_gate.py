"""
A controlled-phase gate through Rydberg blockade
=================================================

Each molecule is paired with an atom that can be excited to |r> only when
the molecule is in |1>. A pi pulse on the control, a 2pi pulse on the target
and a second pi pulse on the control give the |11> branch a phase that
differs from the others by pi, provided the Rydberg-Rydberg shift blocks the
target excitation.
"""

import math

import numpy as np

from rydmol.quantum_engine import blockade_phase_gate

omega = 2 * math.pi * 100e3

# %%
# Entangling phase and leakage as the interaction grows.
for ratio in np.logspace(0, 6, 7):
    g = blockade_phase_gate(omega, omega, ratio * omega)
    print(f"V/Omega = {ratio:8.0e}  phase = {g.extras['nonlocal_phase']:+.6f}  "
          f"leakage = {g.leakage:.2e}  fidelity = {g.fidelity:.8f}")

# %%
# A 1 us gate against a 6.4 us Rydberg lifetime.
omega_fast = 4 * math.pi / 1e-6
g = blockade_phase_gate(omega_fast, omega_fast, 1e4 * omega_fast, decay_rate=1 / 6.4e-6)
print(f"\nT_gate = {g.params['t_gate'] * 1e6:.2f} us, mean survival = {g.survival:.4f}")
