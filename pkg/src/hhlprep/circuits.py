"""Phase-estimation subcircuits and the eigenvalue-keyed ancilla rotations.

Clock values are decoded two's-complement throughout: raw k in
[0, 2^n_clock) reads as k - 2^n_clock once k >= 2^(n_clock-1).  Negative
diagonal entries produce phases that wrap modulo one, so the signed
reading is what makes the rotation amplitudes come out with the right
sign.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .costs import CircuitTrace
from .errors import PreconditionError, RotationDomainError, ValidationError
from .statevector import (
    RegisterUnitaryAction,
    StateVector,
    apply_1q,
    apply_controlled_register_unitary,
    clock_value_weights,
    hadamard,
    outcome_probability,
    qft_register,
)

OCCUPANCY_TOL = 1e-12
ROTATION_DOMAIN_SLACK = 1e-9

ActionFactory = Callable[[int], RegisterUnitaryAction]


def decode_signed(raw: int, n_clock: int) -> int:
    """Two's-complement reading of a raw clock value."""
    size = 1 << n_clock
    if not 0 <= raw < size:
        raise ValidationError(f"raw clock value {raw} out of [0, {size})")
    return raw - size if raw >= size // 2 else raw


def encode_signed(value: int, n_clock: int) -> int:
    size = 1 << n_clock
    if not -size // 2 <= value < size // 2:
        raise ValidationError(
            f"signed clock value {value} out of [{-size // 2}, {size // 2})"
        )
    return value % size


@dataclass(frozen=True)
class ClockValue:
    """A clock basis value in both encodings."""

    raw: int
    signed: int
    n_clock: int

    @classmethod
    def from_raw(cls, raw: int, n_clock: int) -> "ClockValue":
        return cls(raw, decode_signed(raw, n_clock), n_clock)

    @classmethod
    def from_signed(cls, signed: int, n_clock: int) -> "ClockValue":
        return cls(encode_signed(signed, n_clock), signed, n_clock)


def signed_clock_values(n_clock: int) -> np.ndarray:
    """Signed decodings of raw clock values 0 .. 2^n_clock - 1, in raw order."""
    size = 1 << n_clock
    vals = np.arange(size, dtype=np.float64)
    vals[size // 2:] -= size
    return vals


def scaled_eigenvalues(values: np.ndarray, t: float, n_clock: int) -> np.ndarray:
    """Clock-units eigenvalue estimates 2^n_clock * value * t / (2 pi)."""
    return (1 << n_clock) * np.asarray(values) * t / (2.0 * math.pi)


@dataclass(frozen=True)
class RotationSpec:
    """Ancilla rotation keyed on the clock: multiply-by or divide-by value."""

    mode: str
    C: float

    def __post_init__(self):
        if self.mode not in ("multiply", "invert"):
            raise ValidationError(f"mode must be 'multiply' or 'invert', got {self.mode!r}")
        if not self.C > 0.0:
            raise ValidationError(f"rotation constant must be positive, got {self.C}")


StageCallback = Callable[[str, StateVector], None]


def qpe(
    state: StateVector,
    action_factory: ActionFactory,
    trace: CircuitTrace | None = None,
    on_stage: StageCallback | None = None,
) -> StateVector:
    """Quantum phase estimation into the clock register.

    Hadamards on the clock, then for each clock qubit r a controlled
    U^(2^r) on the low register, then the inverse Fourier transform.  The
    clock must start in |0...0>.  `on_stage` fires after each of the
    three stages ("hadamards", "ladder", "fourier") for step tracing.
    """
    layout = state.layout
    residual = float(np.sum(clock_value_weights(state)[1:]))
    if residual > OCCUPANCY_TOL:
        raise PreconditionError(
            f"clock register not in |0...0> (weight {residual:.3e} elsewhere)"
        )
    emit = on_stage or (lambda stage, s: None)
    h = hadamard()
    for q in layout.clock_qubits:
        apply_1q(state, h, q)
        if trace is not None:
            trace.hadamard(q)
    emit("hadamards", state)
    for r in range(layout.n_clock - 1, -1, -1):
        power = 1 << r
        apply_controlled_register_unitary(
            state, layout.clock_offset + r, action_factory(power)
        )
        if trace is not None:
            trace.ladder(r, power)
    emit("ladder", state)
    qft_register(state, inverse=True)
    if trace is not None:
        trace.qft(layout.n_clock, inverse=True)
    emit("fourier", state)
    return state


def iqpe(
    state: StateVector,
    inverse_action_factory: ActionFactory,
    trace: CircuitTrace | None = None,
    on_stage: StageCallback | None = None,
) -> StateVector:
    """Exact operator inverse of `qpe`.

    Forward Fourier transform, the controlled ladder with the inverse
    propagator (the factory must produce U^(-power), i.e. the propagator
    at -t), then Hadamards on the clock.  `on_stage` fires after each
    stage ("fourier", "ladder", "hadamards").
    """
    layout = state.layout
    emit = on_stage or (lambda stage, s: None)
    qft_register(state, inverse=False)
    if trace is not None:
        trace.qft(layout.n_clock, inverse=False)
    emit("fourier", state)
    for r in range(layout.n_clock):
        power = 1 << r
        apply_controlled_register_unitary(
            state, layout.clock_offset + r, inverse_action_factory(power)
        )
        if trace is not None:
            trace.ladder(r, power)
    emit("ladder", state)
    h = hadamard()
    for q in layout.clock_qubits:
        apply_1q(state, h, q)
        if trace is not None:
            trace.hadamard(q)
    emit("hadamards", state)
    return state


def rotation_ratios(spec: RotationSpec, n_clock: int) -> np.ndarray:
    """Per-raw-clock-value amplitude the rotation writes on |1>_a.

    multiply: C * value; invert: C / value with the value-0 bin left
    untouched (identity), matching how out-of-band eigenvalues are handled
    in practice; such components are filtered by post-selection.
    """
    vals = signed_clock_values(n_clock)
    if spec.mode == "multiply":
        return spec.C * vals
    ratios = np.zeros_like(vals)
    nz = vals != 0.0
    ratios[nz] = spec.C / vals[nz]
    return ratios


def controlled_rotation(
    state: StateVector,
    spec: RotationSpec,
    trace: CircuitTrace | None = None,
) -> StateVector:
    """Rotate the ancilla by arcsin of the per-clock-value ratio.

    For each clock basis value with signed reading v, the ancilla (which
    must be |0>) becomes sqrt(1 - r^2)|0> + r|1> with r = C*v or C/v.  Any
    occupied clock value whose |r| exceeds 1 is a domain error: no unitary
    implements that rotation.
    """
    layout = state.layout
    if outcome_probability(state, layout.ancilla_qubit, 1) > OCCUPANCY_TOL:
        raise PreconditionError("ancilla must be |0> before the controlled rotation")
    ratios = rotation_ratios(spec, layout.n_clock)
    weights = clock_value_weights(state)
    bad = (np.abs(ratios) > 1.0 + ROTATION_DOMAIN_SLACK) & (weights > OCCUPANCY_TOL)
    if np.any(bad):
        k = int(np.argmax(bad))
        raise RotationDomainError(
            f"occupied clock value {k} (signed {decode_signed(k, layout.n_clock)}) "
            f"gives rotation amplitude {ratios[k]:.6g} outside [-1, 1]"
        )
    sin = np.clip(ratios, -1.0, 1.0)
    cos = np.sqrt(np.maximum(0.0, 1.0 - sin * sin))
    low = 1 << layout.clock_offset
    view = state.amplitudes.reshape(2, 1 << layout.n_clock, low)
    a0 = view[0].copy()
    a1 = view[1]
    col_sin = sin[:, None]
    col_cos = cos[:, None]
    view[0] = col_cos * a0 - col_sin * a1
    view[1] = col_sin * a0 + col_cos * a1
    if trace is not None:
        trace.rotation(layout.n_clock, spec.mode)
    return state
