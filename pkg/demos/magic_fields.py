"""
Magnetically insensitive Lambda-doublet transitions in CH
==========================================================

The e and f components of the CH Lambda doublet carry hyperfine structure
with opposite ordering. Their Zeeman shifts nearly cancel on some pi
transitions, and at one field the transition frequency becomes stationary.
"""

import numpy as np

from rydmol.lambda_doublet import (
    HyperfineLevel,
    LambdaDoubletSpec,
    find_magic_field,
    transition_frequency,
)

ch = LambdaDoubletSpec.ch()
pairs = [(HyperfineLevel("e", 1, 1), HyperfineLevel("f", 2, 1)),
         (HyperfineLevel("e", 2, 1), HyperfineLevel("f", 1, 1))]

# %%
for a, b in pairs:
    B = find_magic_field(ch, a, b)
    nu = transition_frequency(ch, a, b, B)
    print(f"{a} -> {b}: B* = {B:.4f} G, nu = {nu:.4f} MHz")

# %%
# Frequency excursion over +-0.2 G around each stationary point, in kHz.
for a, b in pairs:
    B = find_magic_field(ch, a, b)
    dB = np.linspace(-0.2, 0.2, 5)
    nu = transition_frequency(ch, a, b, B + dB)
    print(" ".join(f"{1e3 * (x - nu[2]):7.3f}" for x in nu))

# %%
# The stationary points survive a 5% change in both g factors.
for s in (0.95, 1.05):
    spec = LambdaDoubletSpec.ch(g_f=ch.g_f * s, g_e=ch.g_e * s)
    print(s, [round(find_magic_field(spec, a, b), 3) for a, b in pairs])
