"""The O(N) comparison encoder: a binary tree of multiplexed rotations.

Standard amplitude encoding: walk the index tree from the top qubit down,
rotating each qubit by the angle that splits the remaining norm between
the two subtrees, one rotation per internal node (2^n - 1 in total).
Real vectors come out exactly, signs included, because the leaf-level
angles are computed from the signed pair values; complex vectors add one
diagonal phase layer charged at N ops.  The census counts tree structure,
not special-case angles.
"""
from __future__ import annotations

import math

import numpy as np

from .costs import CostReport
from .propagators import AmplitudeVector


def baseline_encode(b: AmplitudeVector) -> tuple[np.ndarray, CostReport]:
    """Encode b exactly; returns the state and the rotation count."""
    n_qubits = b.n_qubits
    n = len(b)
    complex_input = b.is_complex
    leaves = np.abs(b.entries) if complex_input else b.entries.real

    # norms[level][node]: 2-norm of the subtree of indices sharing the top
    # `level` bits; norms[n_qubits] holds the leaf values themselves
    # (signed in the real case, so the last rotation places the signs).
    norms = [leaves]
    while len(norms[-1]) > 1:
        prev = norms[-1]
        norms.append(np.sqrt(prev[0::2] ** 2 + prev[1::2] ** 2))
    norms.reverse()

    state = np.zeros(n, dtype=np.complex128)
    state[0] = 1.0
    rotations = 0
    for level in range(n_qubits):
        # Splitting qubit n_qubits-1-level: blocks of 2^(n_qubits-level).
        block = 1 << (n_qubits - level)
        half = block // 2
        for node in range(1 << level):
            lo = norms[level + 1][2 * node]
            hi = norms[level + 1][2 * node + 1]
            theta = 2.0 * math.atan2(hi, lo)
            c, s = math.cos(theta / 2.0), math.sin(theta / 2.0)
            base = node * block
            low = state[base : base + half].copy()
            high = state[base + half : base + block]
            state[base : base + half] = c * low - s * high
            state[base + half : base + block] = s * low + c * high
            rotations += 1

    if complex_input:
        state = state * np.exp(1j * np.angle(b.entries))
        rotations += n

    report = CostReport(rotation_ops_charged=rotations)
    return state, report
