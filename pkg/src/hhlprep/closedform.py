"""Direct-formula evaluator for the ten intermediate pipeline states.

Every state is assembled from explicit sums over basis indices built out
of the run parameters (b, t, C, n_clock); no gate kernel from the
simulator is used.  This is the independent oracle the circuit trace is
checked against.  Real amplitude vectors only (the Hermitian case); the
embedding path is verified structurally elsewhere.

Index convention matches RegisterLayout with no flag qubit: amplitude
index = j + k * 2^n_target + a * 2^(n_target + n_clock).
"""
from __future__ import annotations

import math

import numpy as np

from .errors import MustEmbedError, ValidationError
from .propagators import AmplitudeVector

STATE_LABELS = tuple(f"psi{i}" for i in range(10))


def reference_states(
    b: AmplitudeVector, t: float, C: float, n_clock: int
) -> list[tuple[str, np.ndarray]]:
    """All ten states as flat amplitude arrays, labeled psi0..psi9."""
    if b.is_complex:
        raise MustEmbedError("closed-form evaluator covers the real (Hermitian) case")
    entries = b.entries.real
    n = len(entries)
    size = 1 << n_clock
    half = size // 2
    dim = n * size * 2

    j = np.arange(n)
    k = np.arange(size)
    phi = entries * t / (2.0 * math.pi)  # per-j phase fraction

    def assemble(target_clock: np.ndarray, ancilla: int) -> np.ndarray:
        """Embed an (n, size) target-by-clock table into the full index space."""
        amps = np.zeros(dim, dtype=np.complex128)
        block = target_clock.T.reshape(-1)  # clock-major, target-minor
        if ancilla == 0:
            amps[: n * size] = block
        else:
            amps[n * size:] = block
        return amps

    states: list[tuple[str, np.ndarray]] = []

    psi0 = np.zeros(dim, dtype=np.complex128)
    psi0[0] = 1.0
    states.append(("psi0", psi0))

    tc1 = np.zeros((n, size), dtype=np.complex128)
    tc1[:, 0] = 1.0 / math.sqrt(n)
    states.append(("psi1", assemble(tc1, 0)))

    tc2 = np.full((n, size), 1.0 / math.sqrt(n * size), dtype=np.complex128)
    states.append(("psi2", assemble(tc2, 0)))

    tc3 = np.exp(2j * np.pi * np.outer(phi, k)) / math.sqrt(n * size)
    states.append(("psi3", assemble(tc3, 0)))

    # psi4[j, m] = (1/sqrt n) (1/size) sum_k exp(2 pi i (phi_j - m/size) k)
    m = np.arange(size)
    kernel = np.exp(2j * np.pi * (phi[:, None, None] - m[None, :, None] / size) * k)
    tc4 = kernel.sum(axis=2) / (size * math.sqrt(n))
    states.append(("psi4", assemble(tc4, 0)))

    signed = m.astype(np.float64).copy()
    signed[half:] -= size
    ratio = np.clip(C * signed, -1.0, 1.0)
    stay = np.sqrt(np.maximum(0.0, 1.0 - ratio * ratio))
    tc5_a0 = tc4 * stay[None, :]
    tc5_a1 = tc4 * ratio[None, :]
    states.append(("psi5", assemble(tc5_a0, 0) + assemble(tc5_a1, 1)))

    p_success = float(np.sum(np.abs(tc5_a1) ** 2))
    if p_success <= 0.0:
        raise ValidationError("closed-form success probability is zero")
    tc6 = tc5_a1 / math.sqrt(p_success)
    states.append(("psi6", assemble(tc6, 1)))

    # psi7[j, y] = (1/sqrt size) sum_m tc6[j, m] exp(2 pi i y m / size)
    y = np.arange(size)
    fwd = np.exp(2j * np.pi * np.outer(y, m) / size) / math.sqrt(size)
    tc7 = tc6 @ fwd.T
    states.append(("psi7", assemble(tc7, 1)))

    tc8 = tc7 * np.exp(-1j * np.outer(entries * t, y))
    states.append(("psi8", assemble(tc8, 1)))

    # psi9[j, z] = (1/sqrt size) sum_y tc8[j, y] (-1)^{popcount(y & z)}
    z = np.arange(size)
    parity = np.zeros((size, size))
    ands = z[:, None] & y[None, :]
    for bit in range(n_clock):
        parity += (ands >> bit) & 1
    walsh = ((-1.0) ** parity) / math.sqrt(size)
    tc9 = tc8 @ walsh.T
    states.append(("psi9", assemble(tc9, 1)))

    return states


def reference_success_probability(
    b: AmplitudeVector, t: float, C: float, n_clock: int
) -> float:
    """Projection probability of the ancilla-1 branch, by direct formula."""
    states = dict(reference_states(b, t, C, n_clock))
    psi5 = states["psi5"]
    n = len(b)
    return float(np.sum(np.abs(psi5[n * (1 << n_clock):]) ** 2))
