"""hhlprep: statevector simulation of phase-estimation amplitude encoding.

A classical vector b is loaded into a quantum register by running the
eigenvalue machinery of the linear-system solver on the diagonal matrix
built from b itself, and the package chains that preparation into the
solver proper.  Everything is simulated exactly on dense statevectors at
desk scale, with a gate/query cost ledger for the scaling claims.
"""

from .baseline import baseline_encode
from .circuits import (
    ClockValue,
    RotationSpec,
    controlled_rotation,
    decode_signed,
    encode_signed,
    iqpe,
    qpe,
    scaled_eigenvalues,
)
from .closedform import reference_states, reference_success_probability
from .costs import CircuitTrace, CostReport, gate_census, rotation_ops_for
from .errors import (
    AliasingError,
    AttemptsExhaustedError,
    CapacityError,
    GateError,
    ImpossibleOutcomeError,
    InputFormatError,
    LayoutError,
    MustEmbedError,
    PreconditionError,
    RegisterOverlapError,
    RotationDomainError,
    ShapeError,
    SimulationError,
    SingularSystemError,
    TraceFormatError,
    ValidationError,
)
from .fileio import (
    generate_vector,
    load_amplitude_vector,
    load_system,
    random_hermitian_matrix,
    resolve_vector,
    save_amplitude_vector,
)
from .layout import DEFAULT_QUBIT_CAP, RegisterLayout
from .prep import (
    PrepParams,
    PrepReport,
    choose_parameters,
    conditional_target_vector,
    is_exact_representable,
    prepare_state,
    random_exact_vector,
    success_probability_analytic,
    trace_steps,
)
from .propagators import (
    AmplitudeVector,
    DiagonalPropagator,
    EmbeddedPropagator,
    build_embedding,
    diagonal_phase_action,
    embedded_phase_action,
    hermitian_expm,
)
from .solver import HermitianSystem, SolveReport, classical_solution, solve_qlsp
from .statevector import (
    DenseUnitaryAction,
    Gate2x2,
    RegisterUnitaryAction,
    StateVector,
    apply_1q,
    apply_controlled_register_unitary,
    clock_value_weights,
    fidelity,
    hadamard,
    init_zero_state,
    measure_postselect,
    outcome_probability,
    pauli_x,
    phase_gate,
    qft_register,
    register_value_weights,
    ry_gate,
)
from .sweep import SweepSpec, run_sweep

__version__ = "0.1.0"
