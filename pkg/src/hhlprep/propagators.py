"""Exact propagators for diagonal amplitude encodings.

A classical unit vector b defines the diagonal matrix diag(b); its
propagator e^{i diag(b) t} is a pure phase per target index.  When b has
complex entries, diag(b) is not Hermitian and the 2Nx2N embedding
[[0, B+], [B, 0]] is used instead; that matrix is 2x2-block over the
(flag, target) pair, so its propagator also has a closed form.  Both
propagators are exact, which is what makes desk-scale verification of the
pipeline bit-tight.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import MustEmbedError, ShapeError, ValidationError
from .statevector import RegisterUnitaryAction

UNIT_NORM_TOL = 1e-12


class AmplitudeVector:
    """The classical target vector: N = 2^n complex entries, unit 2-norm."""

    def __init__(self, entries):
        arr = np.asarray(entries, dtype=np.complex128).reshape(-1)
        n = len(arr)
        if n < 2 or n & (n - 1):
            raise ValidationError(f"length must be a power of two >= 2, got {n}")
        norm = np.linalg.norm(arr)
        if abs(norm - 1.0) > UNIT_NORM_TOL:
            raise ValidationError(
                f"entries must have unit 2-norm within {UNIT_NORM_TOL}, got {norm!r}"
            )
        arr.flags.writeable = False
        self._entries = arr

    @classmethod
    def normalized(cls, values) -> "AmplitudeVector":
        arr = np.asarray(values, dtype=np.complex128).reshape(-1)
        norm = np.linalg.norm(arr)
        if norm == 0.0:
            raise ValidationError("cannot normalize the all-zero vector")
        return cls(arr / norm)

    @property
    def entries(self) -> np.ndarray:
        return self._entries

    @property
    def n_qubits(self) -> int:
        return len(self._entries).bit_length() - 1

    @property
    def is_complex(self) -> bool:
        return bool(np.any(self._entries.imag != 0.0))

    def __len__(self) -> int:
        return len(self._entries)

    def __repr__(self) -> str:
        return f"AmplitudeVector({self._entries.tolist()!r})"


@dataclass(frozen=True)
class DiagonalPropagator:
    """e^{i diag(b) t}: multiplies basis state |j> by the phase e^{i b_j t}."""

    source: AmplitudeVector
    t: float


@dataclass(frozen=True)
class EmbeddedPropagator:
    """e^{i Bt t} for the Hermitian embedding Bt = [[0, B+], [B, 0]].

    Per target index j the embedding is the 2x2 block [[0, conj(b_j)],
    [b_j, 0]] on the flag pair, with eigenvalues +-|b_j|; its exponential
    is cos(|b_j| t) I + i sin(|b_j| t) [[0, e^{-i th_j}], [e^{i th_j}, 0]]
    where b_j = |b_j| e^{i th_j}.
    """

    source: AmplitudeVector
    t: float

    @property
    def moduli(self) -> np.ndarray:
        return np.abs(self.source.entries)

    @property
    def phase_angles(self) -> np.ndarray:
        return np.angle(self.source.entries)

    def dense_matrix(self) -> np.ndarray:
        """The 2Nx2N embedding matrix itself (flag is the high index bit)."""
        n = len(self.source)
        b = self.source.entries
        m = np.zeros((2 * n, 2 * n), dtype=np.complex128)
        m[:n, n:] = np.diag(b.conj())
        m[n:, :n] = np.diag(b)
        return m


class DiagonalPhaseAction(RegisterUnitaryAction):
    """Phase e^{i b_j t power} on target index j; one oracle query per power."""

    def __init__(self, angles: np.ndarray, power: int, name: str = "diag-propagator"):
        if power < 1:
            raise ValidationError(f"power must be >= 1, got {power}")
        self._angles = angles
        self.power = power
        self.name = name
        self.num_qubits = len(angles).bit_length() - 1
        self._phase = np.exp(1j * angles * power)

    def apply(self, block: np.ndarray) -> np.ndarray:
        return block * self._phase

    def repeated(self, k: int) -> "DiagonalPhaseAction":
        return DiagonalPhaseAction(self._angles, self.power * k, self.name)

    def dense(self) -> np.ndarray:
        return np.diag(self._phase)


class EmbeddedBlockAction(RegisterUnitaryAction):
    """Closed-form block propagator of the Hermitian embedding."""

    def __init__(self, moduli, phase_angles, t: float, power: int):
        if power < 1:
            raise ValidationError(f"power must be >= 1, got {power}")
        self._moduli = np.asarray(moduli, dtype=np.float64)
        self._thetas = np.asarray(phase_angles, dtype=np.float64)
        self._t = float(t)
        self.power = power
        self.name = "embedded-propagator"
        self.num_qubits = len(self._moduli).bit_length()  # target bits + flag bit
        angle = self._moduli * (self._t * power)
        self._cos = np.cos(angle)
        self._isin_lo = 1j * np.sin(angle) * np.exp(-1j * self._thetas)
        self._isin_hi = 1j * np.sin(angle) * np.exp(1j * self._thetas)

    def apply(self, block: np.ndarray) -> np.ndarray:
        n = len(self._moduli)
        u0 = block[..., :n]
        u1 = block[..., n:]
        out = np.empty_like(block)
        out[..., :n] = self._cos * u0 + self._isin_lo * u1
        out[..., n:] = self._isin_hi * u0 + self._cos * u1
        return out

    def repeated(self, k: int) -> "EmbeddedBlockAction":
        return EmbeddedBlockAction(self._moduli, self._thetas, self._t, self.power * k)

    def dense(self) -> np.ndarray:
        n = len(self._moduli)
        m = np.zeros((2 * n, 2 * n), dtype=np.complex128)
        m[:n, :n] = np.diag(self._cos.astype(np.complex128))
        m[n:, n:] = np.diag(self._cos.astype(np.complex128))
        m[:n, n:] = np.diag(self._isin_lo)
        m[n:, :n] = np.diag(self._isin_hi)
        return m


def diagonal_phase_action(prop: DiagonalPropagator, power: int) -> DiagonalPhaseAction:
    """Action for U^power with U = e^{i diag(b) t}; real b only."""
    if prop.source.is_complex:
        raise MustEmbedError(
            "diagonal propagator needs real amplitudes; complex vectors go "
            "through build_embedding"
        )
    return DiagonalPhaseAction(prop.source.entries.real * prop.t, power)


def build_embedding(b: AmplitudeVector, t: float) -> EmbeddedPropagator:
    """Hermitian-embedding propagator spec for b (real b is allowed too)."""
    return EmbeddedPropagator(b, t)


def embedded_phase_action(prop: EmbeddedPropagator, power: int) -> EmbeddedBlockAction:
    return EmbeddedBlockAction(prop.moduli, prop.phase_angles, prop.t, power)


def hermitian_expm(matrix: np.ndarray, scale: float = 1.0) -> np.ndarray:
    """e^{i scale M} for Hermitian M via eigendecomposition (exact, desk scale)."""
    m = np.asarray(matrix, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ShapeError(f"expected a square matrix, got shape {m.shape}")
    herm_defect = np.max(np.abs(m - m.conj().T))
    if herm_defect > 1e-12:
        raise ValidationError(f"matrix is not Hermitian (defect {herm_defect:.3e})")
    eigvals, eigvecs = np.linalg.eigh(m)
    return (eigvecs * np.exp(1j * scale * eigvals)) @ eigvecs.conj().T
