"""File formats and generator specs for vectors, systems, and reports.

Vector files: CSV with one `re,im` row per entry, or JSON of the form
{"entries": [[re, im], ...]}.  Generator specs are colon-separated
strings: uniform:N  basis:N:J  random:N  randomc:N  exact:N (the last
needs a clock width and also proposes the evolution time that makes the
run exactly representable).  N counts target qubits.
"""
from __future__ import annotations

import csv
import json
import math
import os
from typing import Any

import numpy as np

from .errors import InputFormatError
from .prep import random_exact_vector
from .propagators import AmplitudeVector
from .solver import HermitianSystem

SCHEMA_VERSION = 1

GENERATOR_NAMES = ("uniform", "basis", "random", "randomc", "exact")


def load_amplitude_vector(path: str) -> AmplitudeVector:
    """Read a vector file (CSV `re,im` rows or JSON entries); normalizes."""
    if path.endswith(".json"):
        with open(path, "r", encoding="utf-8") as fh:
            payload = json.load(fh)
        entries = payload.get("entries")
        if entries is None:
            raise InputFormatError(f"{path}: JSON vector needs an 'entries' field")
        return AmplitudeVector.normalized(_parse_complex_list(entries, path))
    with open(path, "r", encoding="utf-8", newline="") as fh:
        rows = [row for row in csv.reader(fh) if row and not row[0].startswith("#")]
    if not rows:
        raise InputFormatError(f"{path}: empty vector file")
    values = []
    for row in rows:
        try:
            re = float(row[0])
            im = float(row[1]) if len(row) > 1 else 0.0
        except (ValueError, IndexError) as exc:
            raise InputFormatError(f"{path}: bad CSV row {row!r}") from exc
        values.append(complex(re, im))
    return AmplitudeVector.normalized(values)


def save_amplitude_vector(path: str, b: AmplitudeVector) -> None:
    if path.endswith(".json"):
        payload = {"entries": [[z.real, z.imag] for z in b.entries]}
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=2)
        return
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        for z in b.entries:
            writer.writerow([repr(z.real), repr(z.imag)])


def _parse_complex_list(raw: Any, where: str) -> list[complex]:
    out = []
    for item in raw:
        if isinstance(item, (int, float)):
            out.append(complex(item, 0.0))
        elif isinstance(item, (list, tuple)) and len(item) == 2:
            out.append(complex(float(item[0]), float(item[1])))
        else:
            raise InputFormatError(f"{where}: bad complex entry {item!r}")
    return out


def generate_vector(
    spec: str, seed: int, n_clock: int | None = None
) -> tuple[AmplitudeVector, float | None]:
    """Build a vector from a generator spec; returns (vector, suggested t)."""
    parts = spec.split(":")
    name = parts[0]
    if name not in GENERATOR_NAMES:
        raise InputFormatError(
            f"unknown generator {name!r}; expected one of {GENERATOR_NAMES}"
        )
    try:
        n_target = int(parts[1])
    except (IndexError, ValueError) as exc:
        raise InputFormatError(f"generator spec {spec!r} needs a qubit count") from exc
    if n_target < 1:
        raise InputFormatError(f"generator spec {spec!r}: qubit count must be >= 1")
    size = 1 << n_target
    rng = np.random.default_rng(seed)
    if name == "uniform":
        return AmplitudeVector([1.0 / math.sqrt(size)] * size), None
    if name == "basis":
        try:
            index = int(parts[2])
        except (IndexError, ValueError) as exc:
            raise InputFormatError(f"basis spec {spec!r} needs an index") from exc
        if not 0 <= index < size:
            raise InputFormatError(f"basis index {index} out of range for {size}")
        entries = np.zeros(size)
        entries[index] = 1.0
        return AmplitudeVector(entries), None
    if name == "random":
        return AmplitudeVector.normalized(rng.normal(size=size)), None
    if name == "randomc":
        return (
            AmplitudeVector.normalized(rng.normal(size=size) + 1j * rng.normal(size=size)),
            None,
        )
    if n_clock is None:
        raise InputFormatError("generator 'exact' needs a clock width")
    complex_flag = len(parts) > 2 and parts[2] == "complex"
    return random_exact_vector(n_target, n_clock, rng, complex_amplitudes=complex_flag)


def resolve_vector(
    arg: str, seed: int, n_clock: int | None = None
) -> tuple[AmplitudeVector, float | None]:
    """Interpret a CLI --input value as a file path or a generator spec."""
    if (
        os.path.exists(arg)
        or arg.endswith(".csv")
        or arg.endswith(".json")
        or os.sep in arg
    ):
        return load_amplitude_vector(arg), None
    return generate_vector(arg, seed, n_clock)


def _parse_matrix(raw: Any, where: str) -> np.ndarray:
    rows = []
    for row in raw:
        rows.append(_parse_complex_list(row, where))
    mat = np.asarray(rows, dtype=np.complex128)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise InputFormatError(f"{where}: matrix must be square, got {mat.shape}")
    return mat


def random_hermitian_matrix(n_qubits: int, seed: int, kappa: float = 4.0) -> np.ndarray:
    """Well-conditioned Hermitian test matrix: spectrum spread over [1, kappa]."""
    if kappa < 1.0:
        raise InputFormatError(f"kappa must be >= 1, got {kappa}")
    size = 1 << n_qubits
    rng = np.random.default_rng(seed)
    gauss = rng.normal(size=(size, size)) + 1j * rng.normal(size=(size, size))
    q, _ = np.linalg.qr(gauss)
    spectrum = np.linspace(1.0, kappa, size)
    a = (q * spectrum) @ q.conj().T
    return (a + a.conj().T) / 2.0


def load_system(path: str) -> HermitianSystem:
    """Read a linear system from JSON: dense matrix, diagonal, or generator."""
    with open(path, "r", encoding="utf-8") as fh:
        payload = json.load(fh)
    b_field = payload.get("b")
    if b_field is None:
        raise InputFormatError(f"{path}: system JSON needs a 'b' field")
    if isinstance(b_field, str):
        b, _ = generate_vector(b_field, int(payload.get("seed", 0)))
    elif isinstance(b_field, dict) and "entries" in b_field:
        b = AmplitudeVector.normalized(_parse_complex_list(b_field["entries"], path))
    else:
        raise InputFormatError(f"{path}: 'b' must be a generator spec or entries object")
    if "matrix" in payload:
        return HermitianSystem(_parse_matrix(payload["matrix"], path), b)
    if "diagonal" in payload:
        diag = np.asarray(payload["diagonal"], dtype=np.float64)
        return HermitianSystem.from_diagonal(diag, b)
    if "random_hermitian" in payload:
        params = payload["random_hermitian"]
        matrix = random_hermitian_matrix(
            int(params["n_qubits"]),
            int(params.get("seed", 0)),
            float(params.get("kappa", 4.0)),
        )
        return HermitianSystem(matrix, b)
    raise InputFormatError(
        f"{path}: system JSON needs 'matrix', 'diagonal', or 'random_hermitian'"
    )


def write_json_report(path: str, kind: str, payload: dict) -> None:
    """Write a report with the versioned envelope all tools share."""
    document = {"schema_version": SCHEMA_VERSION, "kind": kind}
    document.update(payload)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(document, fh, indent=2)
        fh.write("\n")
