"""Dense complex statevector and the minimal gate set used by the circuits.

Operations mutate the amplitude buffer of the state they are given and
return the same object, so calls can be chained.  An operation owns its
input state while it runs; callers that need the previous state must copy
first.  All amplitude work is vectorized numpy, which keeps reductions
deterministic for a fixed build.
"""
from __future__ import annotations

import abc
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    GateError,
    ImpossibleOutcomeError,
    LayoutError,
    PreconditionError,
    RegisterOverlapError,
    ShapeError,
)
from .layout import RegisterLayout

NORM_TOL = 1e-12
PROJECTION_FLOOR = 1e-15

_SQRT1_2 = 1.0 / math.sqrt(2.0)


@dataclass(frozen=True)
class Gate2x2:
    """Single-qubit gate; validated unitary (U+U = I entrywise, 1e-12)."""

    u00: complex
    u01: complex
    u10: complex
    u11: complex

    def __post_init__(self):
        m = self.matrix
        if not np.allclose(m.conj().T @ m, np.eye(2), atol=NORM_TOL, rtol=0.0):
            raise GateError(f"gate is not unitary within {NORM_TOL}: {m!r}")

    @property
    def matrix(self) -> np.ndarray:
        return np.array(
            [[self.u00, self.u01], [self.u10, self.u11]], dtype=np.complex128
        )


def hadamard() -> Gate2x2:
    return Gate2x2(_SQRT1_2, _SQRT1_2, _SQRT1_2, -_SQRT1_2)


def pauli_x() -> Gate2x2:
    return Gate2x2(0.0, 1.0, 1.0, 0.0)


def phase_gate(theta: float) -> Gate2x2:
    return Gate2x2(1.0, 0.0, 0.0, complex(math.cos(theta), math.sin(theta)))


def ry_gate(theta: float) -> Gate2x2:
    c, s = math.cos(theta / 2.0), math.sin(theta / 2.0)
    return Gate2x2(c, -s, s, c)


@dataclass
class StateVector:
    """2^total complex amplitudes over a fixed register layout."""

    layout: RegisterLayout
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        self.amplitudes = np.asarray(self.amplitudes, dtype=np.complex128)
        if self.amplitudes.shape != (self.layout.dim,):
            raise ShapeError(
                f"amplitude buffer has shape {self.amplitudes.shape}, "
                f"layout wants ({self.layout.dim},)"
            )

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def copy(self) -> "StateVector":
        return StateVector(self.layout, self.amplitudes.copy())

    def assert_normalized(self, tol: float = NORM_TOL) -> "StateVector":
        drift = abs(self.norm() - 1.0)
        if drift > tol:
            raise PreconditionError(f"state norm drifted by {drift:.3e} (> {tol})")
        return self


def init_zero_state(layout: RegisterLayout) -> StateVector:
    """All-qubits-zero basis state for the given layout."""
    amps = np.zeros(layout.dim, dtype=np.complex128)
    amps[0] = 1.0
    return StateVector(layout, amps)


def apply_1q(state: StateVector, gate: Gate2x2, qubit: int) -> StateVector:
    """Apply a 2x2 gate to one qubit (tensor-product action on the rest)."""
    if not 0 <= qubit < state.layout.total:
        raise LayoutError(f"qubit {qubit} out of range for {state.layout.total} qubits")
    low = 1 << qubit
    view = state.amplitudes.reshape(-1, 2, low)
    a0 = view[:, 0, :].copy()
    a1 = view[:, 1, :]
    view[:, 0, :] = gate.u00 * a0 + gate.u01 * a1
    view[:, 1, :] = gate.u10 * a0 + gate.u11 * a1
    return state


def _apply_cphase(state: StateVector, qubit_a: int, qubit_b: int, theta: float) -> StateVector:
    """Symmetric controlled-phase: multiply |..1..1..> amplitudes by e^{i theta}."""
    if qubit_a == qubit_b:
        raise LayoutError("controlled-phase needs two distinct qubits")
    idx = np.arange(state.layout.dim)
    mask = (((idx >> qubit_a) & 1) & ((idx >> qubit_b) & 1)).astype(bool)
    state.amplitudes[mask] *= complex(math.cos(theta), math.sin(theta))
    return state


def _apply_swap(state: StateVector, qubit_a: int, qubit_b: int) -> StateVector:
    if qubit_a == qubit_b:
        return state
    idx = np.arange(state.layout.dim)
    bit_a = (idx >> qubit_a) & 1
    bit_b = (idx >> qubit_b) & 1
    differ = bit_a != bit_b
    swapped = idx ^ ((1 << qubit_a) | (1 << qubit_b))
    out = state.amplitudes.copy()
    out[swapped[differ]] = state.amplitudes[idx[differ]]
    state.amplitudes = out
    return state


class RegisterUnitaryAction(abc.ABC):
    """Unitary acting on the low `num_qubits` qubits of the state.

    Instances carry a `power` (the propagator exponent baked in by the
    factory that built them); `repeated(k)` returns the k-fold composition
    as a new action so controlled applications stay one vectorized pass.
    """

    name: str = "action"
    num_qubits: int = 1
    power: int = 1

    @abc.abstractmethod
    def apply(self, block: np.ndarray) -> np.ndarray:
        """Apply to an array whose last axis is the register dimension."""

    @abc.abstractmethod
    def repeated(self, k: int) -> "RegisterUnitaryAction":
        """The action composed with itself k times."""

    @abc.abstractmethod
    def dense(self) -> np.ndarray:
        """Explicit (2^num_qubits)^2 matrix; used by tests and small layouts."""


class DenseUnitaryAction(RegisterUnitaryAction):
    """Explicit-matrix action on the low qubits; the general-purpose fallback."""

    def __init__(self, matrix: np.ndarray, power: int = 1, name: str = "dense"):
        m = np.asarray(matrix, dtype=np.complex128)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ShapeError(f"expected a square matrix, got shape {m.shape}")
        dim = m.shape[0]
        if dim < 2 or dim & (dim - 1):
            raise ShapeError(f"matrix dimension must be a power of two, got {dim}")
        if not np.allclose(m.conj().T @ m, np.eye(dim), atol=NORM_TOL, rtol=0.0):
            raise GateError(f"matrix is not unitary within {NORM_TOL}")
        self._matrix = m
        self.power = power
        self.name = name
        self.num_qubits = dim.bit_length() - 1

    def apply(self, block: np.ndarray) -> np.ndarray:
        return block @ self._matrix.T

    def repeated(self, k: int) -> "DenseUnitaryAction":
        return DenseUnitaryAction(
            np.linalg.matrix_power(self._matrix, k), self.power * k, self.name
        )

    def dense(self) -> np.ndarray:
        return self._matrix.copy()


def apply_controlled_register_unitary(
    state: StateVector,
    control: int,
    action: RegisterUnitaryAction,
    repeat: int = 1,
) -> StateVector:
    """Apply `action` (composed `repeat` times) where the control qubit is 1.

    The action must live entirely below the control qubit; QPE ladders use
    clock qubits as controls and the target(+flag) register as the action
    span, so this always holds there.
    """
    layout = state.layout
    if not 0 <= control < layout.total:
        raise LayoutError(f"control qubit {control} out of range")
    if control < action.num_qubits:
        raise RegisterOverlapError(
            f"control qubit {control} lies inside the {action.num_qubits}-qubit "
            "register the action operates on"
        )
    if repeat < 1:
        raise GateError(f"repeat must be >= 1, got {repeat}")
    total_power = action.power * repeat
    if total_power > 1 << (layout.n_clock - 1):
        raise GateError(
            f"propagator power {total_power} exceeds the largest QPE rung "
            f"2^(n_clock-1) = {1 << (layout.n_clock - 1)}"
        )
    eff = action if repeat == 1 else action.repeated(repeat)
    dim_reg = 1 << eff.num_qubits
    low_groups = (1 << control) // dim_reg
    view = state.amplitudes.reshape(-1, 2, low_groups, dim_reg)
    view[:, 1] = eff.apply(view[:, 1])
    return state


def _dft_matrix(n_qubits: int, inverse: bool) -> np.ndarray:
    dim = 1 << n_qubits
    k = np.arange(dim)
    sign = -1.0 if inverse else 1.0
    kernel = np.exp(sign * 2j * np.pi * np.outer(k, k) / dim)
    return kernel / math.sqrt(dim)


_DFT_CACHE: dict[tuple[int, bool], np.ndarray] = {}


def _cached_dft(n_qubits: int, inverse: bool) -> np.ndarray:
    key = (n_qubits, inverse)
    if key not in _DFT_CACHE:
        _DFT_CACHE[key] = _dft_matrix(n_qubits, inverse)
    return _DFT_CACHE[key]


def qft_register(
    state: StateVector, inverse: bool = False, impl: str = "dense"
) -> StateVector:
    """(Inverse) Fourier transform of the clock register.

    Forward kernel is e^{+2 pi i y k / 2^n_clock} / 2^{n_clock/2}; the
    inverse is its conjugate.  `impl="dense"` applies the kernel directly
    along the clock axis (via the orthonormal FFT, which is that exact
    unitary); `impl="gates"` runs the standard Hadamard plus
    controlled-phase decomposition (n(n+1)/2 gates and final swaps).  Both
    agree within 1e-12 and the dense path is the default.
    """
    layout = state.layout
    if impl == "dense":
        low = 1 << layout.clock_offset
        view = state.amplitudes.reshape(-1, 1 << layout.n_clock, low)
        # ifft carries the e^{+2 pi i} kernel, matching the forward QFT.
        transform = np.fft.fft if inverse else np.fft.ifft
        state.amplitudes = np.ascontiguousarray(
            transform(view, axis=1, norm="ortho")
        ).reshape(layout.dim)
        return state
    if impl == "gates":
        return _qft_by_gates(state, inverse)
    raise GateError(f"unknown qft impl {impl!r}")


def _qft_by_gates(state: StateVector, inverse: bool) -> StateVector:
    layout = state.layout
    n = layout.n_clock
    wire = lambda s: layout.clock_offset + s  # noqa: E731
    h = hadamard()
    if not inverse:
        for s in range(n - 1, -1, -1):
            apply_1q(state, h, wire(s))
            for u in range(s):
                _apply_cphase(state, wire(u), wire(s), 2.0 * math.pi / (1 << (s + 1 - u)))
        for s in range(n // 2):
            _apply_swap(state, wire(s), wire(n - 1 - s))
    else:
        for s in range(n // 2):
            _apply_swap(state, wire(s), wire(n - 1 - s))
        for s in range(n):
            for u in reversed(range(s)):
                _apply_cphase(state, wire(u), wire(s), -2.0 * math.pi / (1 << (s + 1 - u)))
            apply_1q(state, h, wire(s))
    return state


def outcome_probability(state: StateVector, qubit: int, outcome: int) -> float:
    """Probability of measuring `outcome` on one qubit (no collapse)."""
    if not 0 <= qubit < state.layout.total:
        raise LayoutError(f"qubit {qubit} out of range")
    if outcome not in (0, 1):
        raise LayoutError(f"outcome must be 0 or 1, got {outcome}")
    view = state.amplitudes.reshape(-1, 2, 1 << qubit)
    return float(np.sum(np.abs(view[:, outcome, :]) ** 2))


def measure_postselect(
    state: StateVector, qubit: int, outcome: int
) -> tuple[StateVector, float]:
    """Project one qubit onto `outcome` and renormalize.

    Returns the (mutated) state and the probability the outcome had.
    Outcomes with probability below 1e-15 are refused: that is the
    prepare-fails branch and the caller decides whether to restart.
    """
    p = outcome_probability(state, qubit, outcome)
    if p < PROJECTION_FLOOR:
        raise ImpossibleOutcomeError(
            f"outcome {outcome} on qubit {qubit} has probability {p:.3e}"
        )
    view = state.amplitudes.reshape(-1, 2, 1 << qubit)
    view[:, 1 - outcome, :] = 0.0
    state.amplitudes *= 1.0 / math.sqrt(p)
    return state, p


def _coerce_vector(obj) -> np.ndarray:
    amps = getattr(obj, "amplitudes", None)
    if amps is None:
        amps = getattr(obj, "entries", None)
    if amps is None:
        amps = obj
    return np.asarray(amps, dtype=np.complex128).reshape(-1)


def fidelity(a, b) -> float:
    """|<a|b>| for two unit vectors (StateVector, AmplitudeVector, or array)."""
    va, vb = _coerce_vector(a), _coerce_vector(b)
    if va.shape != vb.shape:
        raise ShapeError(f"dimension mismatch: {va.shape} vs {vb.shape}")
    for name, v in (("a", va), ("b", vb)):
        n = np.linalg.norm(v)
        if abs(n - 1.0) > 1e-9:
            raise ShapeError(f"operand {name} is not unit norm (|{name}| = {n!r})")
    return float(abs(np.vdot(va, vb)))


def register_value_weights(state: StateVector, offset: int, width: int) -> np.ndarray:
    """Marginal probability of each value of the register at [offset, offset+width)."""
    if width < 1 or offset < 0 or offset + width > state.layout.total:
        raise LayoutError("register window out of range")
    view = state.amplitudes.reshape(-1, 1 << width, 1 << offset)
    return np.sum(np.abs(view) ** 2, axis=(0, 2))


def clock_value_weights(state: StateVector) -> np.ndarray:
    layout = state.layout
    return register_value_weights(state, layout.clock_offset, layout.n_clock)
