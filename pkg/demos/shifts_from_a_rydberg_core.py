"""
Excitation shifts from a molecule inside a Rydberg orbit
=========================================================

A KRb molecule sits inside the orbit of a Rb(50s) electron. The electron
cloud screens the ionic core, so the molecule feels only the field of the
charge enclosed within its radius. That field mixes rotational levels and
shifts the atom's Rydberg line differently for each molecular J.
"""

import numpy as np

from rydmol.rotor_stark import RigidRotorSpec, shift_scan
from rydmol.rydberg_core import RydbergLevel, shielded_core_field, solve_radial
from rydmol.units import Quantity, to_au

# %%
# Solve for the radial wavefunction. The quantum defect lowers n* to 46.87.
level = RydbergLevel(50, 0, quantum_defect=3.13)
wf = solve_radial(level)
print(f"n* = {level.n_eff:.2f}, nodes = {wf.node_count()}, <r> = {wf.expectation_r():.0f} bohr")

# %%
# The screened field falls from the bare 1/R^2 towards zero at the orbit edge.
for r_nm in (20, 50, 100, 150, 200, 300):
    F = shielded_core_field(wf, Quantity(r_nm, "nm"))
    print(f"R = {r_nm:4d} nm   F = {F:.3e} a.u. = {Quantity(F, 'au_field').to('V/cm').value:8.1f} V/cm")

# %%
# Shifts of the lowest rotor states across the orbit.
krb = RigidRotorSpec.krb()
curve = shift_scan(krb, wf, to_au(np.linspace(60, 250, 8), "nm"))
print("\n  R/nm   " + "  ".join(f"J={j} /MHz" for j in range(4)))
for R, row in zip(curve.r_nm, curve.shifts_mhz):
    print(f"{R:6.1f}  " + "  ".join(f"{s:9.3f}" for s in row[:4]))
