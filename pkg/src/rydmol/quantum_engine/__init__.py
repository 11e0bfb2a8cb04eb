"""Few-level composite systems, pulse evolution and the gate/network protocols."""

from .core import (
    CompositeSystem,
    PureState,
    Pulse,
    Subsystem,
    apply_pulse,
    load_pulse_sequence,
    pulse_from_record,
    pulse_hamiltonian,
    propagator,
    run_sequence,
    sequence_propagator,
)
from .gates import (
    GateResult,
    addressing_crosstalk,
    blockade_phase_gate,
    cnot_atom_target,
    cnot_molecule_target,
    nonlocal_phase,
    phase_corrected_fidelity,
)
from .network import (
    SwapOutcome,
    bell_state,
    entanglement_swap,
    prepare_lr_superposition,
    product_model,
    qubit_register,
    repeater_chain,
    sample_swap,
)
