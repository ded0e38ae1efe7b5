"""The original linear-system solver, fed by the state-preparation pipeline.

Same phase-estimation skeleton as the preparation circuit, with the
multiply rotation swapped for the divide rotation (ancilla amplitude
C / eigenvalue-estimate), so post-selection leaves the target register
proportional to A^-1 b.  The propagator e^{iAt} is computed by exact
eigendecomposition: dense for desk-scale matrices, a pure phase per index
when A is diagonal.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .circuits import RotationSpec, controlled_rotation, iqpe, qpe, scaled_eigenvalues
from .costs import CircuitTrace, CostReport, gate_census
from .errors import AliasingError, ShapeError, SingularSystemError, ValidationError
from .layout import RegisterLayout
from .prep import (
    PrepParams,
    PrepReport,
    choose_parameters,
    conditional_target_vector,
    prepare_state,
)
from .propagators import AmplitudeVector, DiagonalPhaseAction
from .statevector import (
    DenseUnitaryAction,
    init_zero_state,
    measure_postselect,
    outcome_probability,
)

HERMITIAN_TOL = 1e-12
SINGULARITY_TOL = 1e-12
OCCUPIED_COMPONENT_TOL = 1e-12


class HermitianSystem:
    """A Hermitian matrix with its right-hand side, eigendata precomputed."""

    def __init__(self, matrix, b: AmplitudeVector):
        a = np.asarray(matrix, dtype=np.complex128)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ShapeError(f"matrix must be square, got shape {a.shape}")
        n = a.shape[0]
        if n < 2 or n & (n - 1):
            raise ShapeError(f"matrix dimension must be a power of two, got {n}")
        if len(b) != n:
            raise ShapeError(f"matrix is {n}x{n} but b has {len(b)} entries")
        defect = float(np.max(np.abs(a - a.conj().T)))
        if defect > HERMITIAN_TOL:
            raise ValidationError(f"matrix is not Hermitian (defect {defect:.3e})")
        self.matrix = a
        self.b = b
        self.is_diagonal = bool(np.all(a[~np.eye(n, dtype=bool)] == 0.0))
        if self.is_diagonal:
            self.eigenvalues = np.real(np.diag(a)).copy()
            self.eigenvectors = np.eye(n, dtype=np.complex128)
        else:
            self.eigenvalues, self.eigenvectors = np.linalg.eigh(a)

    @classmethod
    def from_diagonal(cls, diagonal, b: AmplitudeVector) -> "HermitianSystem":
        d = np.asarray(diagonal, dtype=np.float64)
        return cls(np.diag(d.astype(np.complex128)), b)

    @property
    def n_qubits(self) -> int:
        return self.matrix.shape[0].bit_length() - 1

    @property
    def condition_number(self) -> float:
        mags = np.abs(self.eigenvalues)
        smallest = float(np.min(mags))
        if smallest <= SINGULARITY_TOL * float(np.max(mags)):
            return math.inf
        return float(np.max(mags)) / smallest

    def require_nonsingular(self) -> None:
        if not math.isfinite(self.condition_number):
            raise SingularSystemError("matrix is singular or numerically singular")


@dataclass(frozen=True)
class SolveReport:
    """Solver outcome versus the classically computed solution."""

    fidelity: float
    success_prob: float
    census: CostReport
    n_clock: int
    t: float
    C: float
    input_mode: str
    prep_report: PrepReport | None = None

    def to_dict(self) -> dict:
        return {
            "fidelity": self.fidelity,
            "success_prob": self.success_prob,
            "census": self.census.to_dict(),
            "n_clock": self.n_clock,
            "t": self.t,
            "C": self.C,
            "input_mode": self.input_mode,
            "prep_report": None if self.prep_report is None else self.prep_report.to_dict(),
        }


def classical_solution(system: HermitianSystem) -> AmplitudeVector:
    """Normalized A^-1 b by direct dense solve; the verification oracle."""
    system.require_nonsingular()
    x = np.linalg.solve(system.matrix, system.b.entries)
    return AmplitudeVector.normalized(x)


def _propagator_factory(system: HermitianSystem, t: float, kind: str):
    if kind == "diagonal":
        if not system.is_diagonal:
            raise ValidationError("diagonal propagator path needs a diagonal matrix")
        angles = np.real(np.diag(system.matrix)) * t
        return lambda power: DiagonalPhaseAction(angles, power, name="system-propagator")
    if kind == "dense":
        eigvals, eigvecs = system.eigenvalues, system.eigenvectors

        def factory(power: int) -> DenseUnitaryAction:
            u = (eigvecs * np.exp(1j * eigvals * t * power)) @ eigvecs.conj().T
            return DenseUnitaryAction(u, power=power, name="system-propagator")

        return factory
    raise ValidationError(f"unknown propagator kind {kind!r}")


def solve_qlsp(
    system: HermitianSystem,
    n_clock: int,
    input_mode: str = "injected",
    t: float | None = None,
    C: float | None = None,
    propagator: str = "auto",
    prep_params: PrepParams | None = None,
    prep_n_clock: int | None = None,
    seed: int = 0,
) -> SolveReport:
    """Approximate |x> with A x = b and compare against the classical solve.

    injected mode writes |b> straight into the target register (the
    testing baseline); prepared mode first runs the state-preparation
    pipeline on b and feeds the solver what that circuit produced.
    Defaults: t scales the largest eigenvalue magnitude to the top of the
    signed clock range; C is the smallest occupied eigenvalue estimate,
    the largest constant the divide rotation admits.  Both are meant for
    exactly representable spectra; pass explicit values otherwise.
    """
    if input_mode not in ("injected", "prepared"):
        raise ValidationError(f"input_mode must be 'injected' or 'prepared', got {input_mode!r}")
    system.require_nonsingular()
    eigvals = system.eigenvalues
    lam_abs_max = float(np.max(np.abs(eigvals)))
    top = (1 << (n_clock - 1)) - 1
    suggested_t = 2.0 * math.pi * top / ((1 << n_clock) * lam_abs_max)
    if t is None:
        t = suggested_t
    lam_tilde = scaled_eigenvalues(eigvals, t, n_clock)
    if float(np.max(np.abs(lam_tilde))) > top + 1e-9:
        raise AliasingError(
            f"eigenvalue estimate {float(np.max(np.abs(lam_tilde))):.6g} overflows "
            f"the signed clock range [-{top + 1}, {top}]",
            suggested_t=suggested_t,
        )

    beta = system.eigenvectors.conj().T @ system.b.entries
    occupied = np.abs(beta) > OCCUPIED_COMPONENT_TOL
    if not np.any(occupied):
        raise ValidationError("b has no weight on any eigenvector")
    if C is None:
        C = float(np.min(np.abs(lam_tilde[occupied])))
        if C <= 0.0:
            raise SingularSystemError("an occupied eigenvalue estimate is zero")

    prop_kind = propagator
    if prop_kind == "auto":
        prop_kind = "diagonal" if system.is_diagonal else "dense"
    fwd = _propagator_factory(system, t, prop_kind)
    inv = _propagator_factory(system, -t, prop_kind)

    prep_report: PrepReport | None = None
    if input_mode == "prepared":
        if prep_params is None:
            prep_params = choose_parameters(
                system.b, prep_n_clock if prep_n_clock is not None else n_clock, seed=seed
            )
        prep_state_out, prep_report = prepare_state(system.b, prep_params)
        input_vector = conditional_target_vector(prep_state_out)
    else:
        input_vector = system.b

    layout = RegisterLayout(system.n_qubits, n_clock)
    state = init_zero_state(layout)
    for j, amp in enumerate(input_vector.entries):
        state.amplitudes[layout.index_of(j, 0, 0)] = amp

    trace = CircuitTrace()
    qpe(state, fwd, trace)
    controlled_rotation(state, RotationSpec("invert", C), trace)
    success_prob = outcome_probability(state, layout.ancilla_qubit, 1)
    measure_postselect(state, layout.ancilla_qubit, 1)
    trace.measure(layout.ancilla_qubit)
    iqpe(state, inv, trace)
    state.assert_normalized(1e-12)

    solution = classical_solution(system)
    ideal = np.zeros(layout.dim, dtype=np.complex128)
    for j, amp in enumerate(solution.entries):
        ideal[layout.index_of(j, 0, 1)] = amp
    fid = float(abs(np.vdot(ideal, state.amplitudes)))

    return SolveReport(
        fidelity=fid,
        success_prob=float(success_prob),
        census=gate_census(trace),
        n_clock=n_clock,
        t=float(t),
        C=float(C),
        input_mode=input_mode,
        prep_report=prep_report,
    )
