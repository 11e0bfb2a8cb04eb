"""Rydberg-atom mediated control of polar-molecule qubits.

Submodules
----------
units               atomic-unit conversions and the constants table
rydberg_core        Rydberg radial wavefunctions, shielded-core field
rotor_stark         rigid rotor Stark shifts and excitation shift curves
lambda_doublet      Lambda-doublet hyperfine Zeeman levels, magic fields
interaction_scales  closed-form interaction ranges and blockade radii
quantum_engine      pulse evolution, gates, entanglement swapping
cli                 command-line front end
"""

__version__ = "0.1.0"
