"""Shared fixtures and independent dense-matrix oracles.

The oracle builders construct full 2^total x 2^total unitaries with plain
Kronecker products and never touch the simulator's kernels, so agreement
between the two is a real check.
"""
import numpy as np
import pytest

from hhlprep import RegisterLayout, StateVector


@pytest.fixture
def rng():
    return np.random.default_rng(20260809)


def random_state(layout: RegisterLayout, rng: np.random.Generator) -> StateVector:
    amps = rng.normal(size=layout.dim) + 1j * rng.normal(size=layout.dim)
    amps /= np.linalg.norm(amps)
    return StateVector(layout, amps)


def kron_all(*factors: np.ndarray) -> np.ndarray:
    """Kronecker product, first argument highest (most significant qubits)."""
    out = np.array([[1.0 + 0.0j]])
    for f in factors:
        out = np.kron(out, f)
    return out


def eye(n_qubits: int) -> np.ndarray:
    return np.eye(1 << n_qubits, dtype=np.complex128)


def dense_1q(total: int, qubit: int, gate: np.ndarray) -> np.ndarray:
    """Full-space matrix of a single-qubit gate at bit position `qubit`."""
    return kron_all(eye(total - qubit - 1), gate, eye(qubit))


def dense_controlled(total: int, control: int, action: np.ndarray) -> np.ndarray:
    """Full-space matrix of `action` on the low qubits, keyed on `control`."""
    m = action.shape[0].bit_length() - 1
    assert control >= m
    p0 = np.array([[1.0, 0.0], [0.0, 0.0]], dtype=np.complex128)
    p1 = np.array([[0.0, 0.0], [0.0, 1.0]], dtype=np.complex128)
    padded = kron_all(eye(control - m), action)
    return kron_all(eye(total - control - 1), p0, eye(control)) + kron_all(
        eye(total - control - 1), p1, padded
    )


def dense_qft(layout: RegisterLayout, inverse: bool) -> np.ndarray:
    """Full-space matrix of the clock-register Fourier transform."""
    size = 1 << layout.n_clock
    k = np.arange(size)
    sign = -1.0 if inverse else 1.0
    kernel = np.exp(sign * 2j * np.pi * np.outer(k, k) / size) / np.sqrt(size)
    high = layout.total - layout.clock_offset - layout.n_clock
    return kron_all(eye(high), kernel, eye(layout.clock_offset))


def dense_rotation(layout: RegisterLayout, sines: np.ndarray) -> np.ndarray:
    """Full-space matrix of the clock-keyed ancilla rotation."""
    out = np.zeros((layout.dim, layout.dim), dtype=np.complex128)
    low = eye(layout.clock_offset)
    for k, s in enumerate(sines):
        c = np.sqrt(max(0.0, 1.0 - s * s))
        ry = np.array([[c, -s], [s, c]], dtype=np.complex128)
        sel = np.zeros((1 << layout.n_clock, 1 << layout.n_clock), dtype=np.complex128)
        sel[k, k] = 1.0
        out += kron_all(ry, sel, low)
    return out
