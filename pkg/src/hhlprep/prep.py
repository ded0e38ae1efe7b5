"""The nine-step state-preparation pipeline.

Flow: Hadamards put the uniform vector in the target register, phase
estimation writes each diagonal entry's scaled eigenvalue into the clock,
the ancilla is rotated by arcsin(C * value) and post-selected on |1>, and
inverse phase estimation erases the clock.  What survives in the target
register is proportional to the diagonal itself, i.e. the vector b.

Complex vectors are routed automatically through the Hermitian embedding:
one flag qubit is added, the propagator becomes the embedding's
block-exact exponential, and the prepared state lands in the flag-1
block.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .circuits import (
    RotationSpec,
    controlled_rotation,
    iqpe,
    qpe,
    scaled_eigenvalues,
)
from .costs import CircuitTrace, CostReport, gate_census
from .errors import AttemptsExhaustedError, ValidationError
from .layout import RegisterLayout
from .propagators import (
    AmplitudeVector,
    DiagonalPropagator,
    EmbeddedPropagator,
    build_embedding,
    diagonal_phase_action,
    embedded_phase_action,
)
from .statevector import (
    StateVector,
    apply_1q,
    clock_value_weights,
    fidelity,
    hadamard,
    init_zero_state,
    measure_postselect,
    outcome_probability,
)

NORM_CHECK_TOL = 1e-12
INTEGER_TOL = 1e-9


@dataclass(frozen=True)
class PrepParams:
    """Run parameters: evolution time, rotation constant, clock width."""

    t: float
    C: float
    n_clock: int
    postselect_mode: str = "exact"
    max_attempts: int = 64
    seed: int = 0

    def __post_init__(self):
        if not self.t > 0.0:
            raise ValidationError(f"evolution time must be positive, got {self.t}")
        if not self.C > 0.0:
            raise ValidationError(f"rotation constant must be positive, got {self.C}")
        if self.n_clock < 1:
            raise ValidationError(f"clock width must be >= 1, got {self.n_clock}")
        if self.postselect_mode not in ("exact", "sampled"):
            raise ValidationError(
                f"postselect_mode must be 'exact' or 'sampled', got {self.postselect_mode!r}"
            )
        if self.max_attempts < 1:
            raise ValidationError(f"max_attempts must be >= 1, got {self.max_attempts}")

    def to_dict(self) -> dict:
        return {
            "t": self.t,
            "C": self.C,
            "n_clock": self.n_clock,
            "postselect_mode": self.postselect_mode,
            "max_attempts": self.max_attempts,
            "seed": self.seed,
        }


@dataclass(frozen=True)
class PrepReport:
    """Verification summary of one preparation run.

    fidelity is the overlap of the full final state with the ideal
    product  |b> |0...0>_clock |1>_ancilla  (flag-1 block for embedded
    runs), so residual clock entanglement lowers it; clock_residual is
    that residual weight on clock != 0, reported separately as a
    diagnostic.  success_prob_observed is None in exact mode.
    """

    fidelity: float
    success_prob_analytic: float
    success_prob_observed: float | None
    attempts: int
    clock_residual: float
    census: CostReport
    params: PrepParams = field(compare=True)

    def to_dict(self) -> dict:
        return {
            "fidelity": self.fidelity,
            "success_prob_analytic": self.success_prob_analytic,
            "success_prob_observed": self.success_prob_observed,
            "attempts": self.attempts,
            "clock_residual": self.clock_residual,
            "census": self.census.to_dict(),
            "params": self.params.to_dict(),
        }


def eigenvalue_moduli(b: AmplitudeVector, t: float, n_clock: int) -> np.ndarray:
    """|scaled eigenvalue| per entry; the embedding occupies both signs."""
    return scaled_eigenvalues(np.abs(b.entries), t, n_clock)


def is_exact_representable(b: AmplitudeVector, t: float, n_clock: int) -> bool:
    """True when every scaled eigenvalue is an integer inside the signed range."""
    lam = eigenvalue_moduli(b, t, n_clock)
    near_int = np.all(np.abs(lam - np.round(lam)) < INTEGER_TOL)
    in_range = np.all(lam <= (1 << (n_clock - 1)) - 1 + INTEGER_TOL)
    return bool(near_int and in_range)


def choose_parameters(
    b: AmplitudeVector,
    n_clock: int,
    t: float | None = None,
    C: float | None = None,
    postselect_mode: str = "exact",
    max_attempts: int = 64,
    seed: int = 0,
) -> PrepParams:
    """Fill in defaults for t and C and validate them against b.

    Default t scales the largest entry to the top of the signed clock
    range (max scaled eigenvalue = 2^(n_clock-1) - 1), which avoids
    aliasing.  Default C is 1/max when every scaled eigenvalue is an
    integer (the rotation then only ever sees those values), and
    1/2^(n_clock-1) otherwise so that every clock bin the estimation can
    leak into stays inside the rotation's arcsin domain.
    """
    if n_clock < 2:
        raise ValidationError(f"clock width must be >= 2, got {n_clock}")
    b_max = float(np.max(np.abs(b.entries)))
    if t is None:
        t = 2.0 * math.pi * ((1 << (n_clock - 1)) - 1) / ((1 << n_clock) * b_max)
    lam = eigenvalue_moduli(b, t, n_clock)
    lam_max = float(np.max(lam))
    if C is None:
        if is_exact_representable(b, t, n_clock):
            C = 1.0 / lam_max
        else:
            C = 1.0 / (1 << (n_clock - 1))
    if lam_max * C > 1.0 + INTEGER_TOL:
        raise ValidationError(
            f"|C * eigenvalue| reaches {lam_max * C:.6g} > 1; lower C or t"
        )
    return PrepParams(
        t=t,
        C=C,
        n_clock=n_clock,
        postselect_mode=postselect_mode,
        max_attempts=max_attempts,
        seed=seed,
    )


def success_probability_analytic(b: AmplitudeVector, params: PrepParams) -> float:
    """C^2 sum_j |scaled eigenvalue_j|^2 / 2^n_target, by direct sum."""
    lam = eigenvalue_moduli(b, params.t, params.n_clock)
    return float(params.C**2 * np.sum(lam**2) / len(b))


def _action_factories(b: AmplitudeVector, t: float):
    """(forward, inverse) controlled-propagator factories for b."""
    if b.is_complex:
        fwd_prop = build_embedding(b, t)
        inv_prop = build_embedding(b, -t)
        return (
            lambda power: embedded_phase_action(fwd_prop, power),
            lambda power: embedded_phase_action(inv_prop, power),
        )
    fwd_prop = DiagonalPropagator(b, t)
    inv_prop = DiagonalPropagator(b, -t)
    return (
        lambda power: diagonal_phase_action(fwd_prop, power),
        lambda power: diagonal_phase_action(inv_prop, power),
    )


def ideal_final_state(b: AmplitudeVector, layout: RegisterLayout) -> np.ndarray:
    """|b> in the target (flag-1 block if present), clock zero, ancilla one."""
    ideal = np.zeros(layout.dim, dtype=np.complex128)
    flag = 1 if layout.has_flag else 0
    for j, amp in enumerate(b.entries):
        ideal[layout.index_of(j, 0, 1, flag=flag)] = amp
    return ideal


def _run_until_measurement(
    b: AmplitudeVector,
    params: PrepParams,
    layout: RegisterLayout,
    fwd_factory,
    trace: CircuitTrace,
    on_state=None,
) -> tuple[StateVector, float]:
    """Steps 1-5; returns the pre-measurement state and its success probability."""
    emit = on_state or (lambda label, state: None)
    state = init_zero_state(layout)
    emit("psi0", state)
    h = hadamard()
    for q in layout.target_qubits:
        apply_1q(state, h, q)
        trace.hadamard(q)
    state.assert_normalized(NORM_CHECK_TOL)
    emit("psi1", state)
    qpe_stages = {"hadamards": "psi2", "ladder": "psi3", "fourier": "psi4"}
    qpe(
        state,
        fwd_factory,
        trace,
        on_stage=lambda stage, s: emit(qpe_stages[stage], s),
    )
    state.assert_normalized(NORM_CHECK_TOL)
    controlled_rotation(state, RotationSpec("multiply", params.C), trace)
    state.assert_normalized(NORM_CHECK_TOL)
    emit("psi5", state)
    p_success = outcome_probability(state, layout.ancilla_qubit, 1)
    return state, p_success


def _finish_after_postselect(
    state: StateVector,
    inv_factory,
    trace: CircuitTrace,
    on_state=None,
) -> StateVector:
    """Steps 7-9 (inverse phase estimation)."""
    emit = on_state or (lambda label, s: None)
    iqpe_stages = {"fourier": "psi7", "ladder": "psi8", "hadamards": "psi9"}
    iqpe(
        state,
        inv_factory,
        trace,
        on_stage=lambda stage, s: emit(iqpe_stages[stage], s),
    )
    state.assert_normalized(NORM_CHECK_TOL)
    return state


def prepare_state(
    b: AmplitudeVector, params: PrepParams
) -> tuple[StateVector, PrepReport]:
    """Run the full preparation and report fidelity, probabilities, and costs.

    Exact mode projects the ancilla onto |1> deterministically; sampled
    mode draws the measurement with the seeded generator and restarts the
    whole circuit on failure, up to max_attempts.  The census always
    describes one complete successful pass.
    """
    layout = RegisterLayout(b.n_qubits, params.n_clock, has_flag=b.is_complex)
    fwd, inv = _action_factories(b, params.t)
    analytic = success_probability_analytic(b, params)

    rng = np.random.default_rng(params.seed)
    attempts = 0
    observed: float | None = None
    while True:
        attempts += 1
        trace = CircuitTrace()
        state, p_success = _run_until_measurement(b, params, layout, fwd, trace)
        if params.postselect_mode == "exact":
            break
        if rng.random() < p_success:
            break
        trace.measure(layout.ancilla_qubit)
        if attempts >= params.max_attempts:
            raise AttemptsExhaustedError(attempts)
    if params.postselect_mode == "sampled":
        observed = 1.0 / attempts

    measure_postselect(state, layout.ancilla_qubit, 1)
    trace.measure(layout.ancilla_qubit)
    _finish_after_postselect(state, inv, trace)

    ideal = ideal_final_state(b, layout)
    report = PrepReport(
        fidelity=float(abs(np.vdot(ideal, state.amplitudes))),
        success_prob_analytic=analytic,
        success_prob_observed=observed,
        attempts=attempts,
        clock_residual=float(np.sum(clock_value_weights(state)[1:])),
        census=gate_census(trace),
        params=params,
    )
    return state, report


def trace_steps(
    b: AmplitudeVector, params: PrepParams
) -> list[tuple[str, StateVector]]:
    """All ten intermediate states psi0..psi9 (ancilla projected exactly)."""
    layout = RegisterLayout(b.n_qubits, params.n_clock, has_flag=b.is_complex)
    fwd, inv = _action_factories(b, params.t)
    snapshots: list[tuple[str, StateVector]] = []

    def collect(label: str, state: StateVector) -> None:
        snapshots.append((label, state.copy()))

    trace = CircuitTrace()
    state, _ = _run_until_measurement(b, params, layout, fwd, trace, on_state=collect)
    measure_postselect(state, layout.ancilla_qubit, 1)
    collect("psi6", state)
    _finish_after_postselect(state, inv, trace, on_state=collect)
    return snapshots


def conditional_target_vector(state: StateVector) -> AmplitudeVector:
    """Target register conditioned on clock zero, ancilla one (flag one if present).

    This is the state a consumer gets when the idle registers are measured
    off; for exact-representable runs the conditioning weight is 1 up to
    float error.
    """
    layout = state.layout
    flag = 1 if layout.has_flag else 0
    idx = [
        layout.index_of(j, 0, 1, flag=flag) for j in range(1 << layout.n_target)
    ]
    return AmplitudeVector.normalized(state.amplitudes[idx])


def random_exact_vector(
    n_target: int,
    n_clock: int,
    rng: np.random.Generator,
    complex_amplitudes: bool = False,
) -> tuple[AmplitudeVector, float]:
    """Random b whose scaled eigenvalues are integers, plus the matching t.

    Entries are drawn as integers v_j in the signed clock range and
    normalized; t = 2 pi ||v|| / 2^n_clock then makes every scaled
    eigenvalue exactly v_j (|v_j| for the complex case, where random
    phases are attached to integer moduli).
    """
    top = (1 << (n_clock - 1)) - 1
    if complex_amplitudes:
        mags = rng.integers(0, top + 1, size=1 << n_target)
        while not np.any(mags):
            mags = rng.integers(0, top + 1, size=1 << n_target)
        phases = rng.uniform(0.0, 2.0 * math.pi, size=1 << n_target)
        raw = mags * np.exp(1j * phases)
    else:
        raw = rng.integers(-top, top + 1, size=1 << n_target).astype(np.float64)
        while not np.any(raw):
            raw = rng.integers(-top, top + 1, size=1 << n_target).astype(np.float64)
    norm = float(np.linalg.norm(raw))
    t = 2.0 * math.pi * norm / (1 << n_clock)
    return AmplitudeVector(raw / norm), t
