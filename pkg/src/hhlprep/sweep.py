"""Experiment sweeps over layout sizes or seeds, with CSV output.

One row per (point, repetition).  Every point gets its own seed derived
from the master seed and the point index, so a sweep is reproducible
row-by-row no matter how many workers run it; rows always come back in
input order.
"""
from __future__ import annotations

import csv
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import InputFormatError, ValidationError
from .fileio import SCHEMA_VERSION, generate_vector
from .prep import choose_parameters, prepare_state

SWEEP_VARIABLES = ("n_target", "n_clock", "seed")
_VARIABLE_ALIASES = {"n_b": "n_target", "n_c": "n_clock"}

CSV_COLUMNS = [
    "schema_version",
    "variable",
    "value",
    "repetition",
    "point_index",
    "seed",
    "n_target",
    "n_clock",
    "t",
    "C",
    "postselect_mode",
    "fidelity",
    "success_prob_analytic",
    "success_prob_observed",
    "attempts",
    "clock_residual",
    "hadamards",
    "controlled_ladder_applications",
    "oracle_queries",
    "qft_gates",
    "rotation_ops_charged",
    "total_charged_unit",
    "total_charged_queries",
]


@dataclass(frozen=True)
class SweepSpec:
    """What to vary, over which values, and what stays fixed."""

    variable: str
    values: tuple[int, ...]
    input_spec: str = "random"
    n_target: int | None = None
    n_clock: int | None = None
    t: float | None = None
    C: float | None = None
    postselect_mode: str = "exact"
    max_attempts: int = 64
    repetitions: int = 1
    seed: int = 0
    output: str | None = None

    def __post_init__(self):
        variable = _VARIABLE_ALIASES.get(self.variable, self.variable)
        object.__setattr__(self, "variable", variable)
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))
        if self.variable not in SWEEP_VARIABLES:
            raise ValidationError(
                f"variable must be one of {SWEEP_VARIABLES}, got {self.variable!r}"
            )
        if not self.values:
            raise ValidationError("sweep needs a nonempty value range")
        if self.repetitions < 1:
            raise ValidationError(f"repetitions must be >= 1, got {self.repetitions}")
        if self.variable != "n_clock" and self.n_clock is None:
            raise ValidationError("fixed n_clock required unless it is the variable")
        if self.variable != "n_target" and self.n_target is None and ":" not in self.input_spec:
            raise ValidationError(
                "fixed n_target (or a sized input spec) required unless it is the variable"
            )

    @classmethod
    def from_json(cls, payload: dict) -> "SweepSpec":
        known = {
            "variable",
            "values",
            "input_spec",
            "n_target",
            "n_clock",
            "t",
            "C",
            "postselect_mode",
            "max_attempts",
            "repetitions",
            "seed",
            "output",
        }
        aliases = {"input": "input_spec", "n_b": "n_target", "n_c": "n_clock"}
        kwargs = {}
        for key, value in payload.items():
            if key == "schema_version":
                continue
            key = aliases.get(key, key)
            if key not in known:
                raise InputFormatError(f"unknown sweep spec field {key!r}")
            kwargs[key] = value
        if "values" not in kwargs or "variable" not in kwargs:
            raise InputFormatError("sweep spec needs 'variable' and 'values'")
        return cls(**kwargs)

    @classmethod
    def from_file(cls, path: str) -> "SweepSpec":
        with open(path, "r", encoding="utf-8") as fh:
            return cls.from_json(json.load(fh))


def point_seed(master_seed: int, point_index: int) -> int:
    """Stable per-point seed from (master seed, point index)."""
    sequence = np.random.SeedSequence([int(master_seed), int(point_index)])
    return int(sequence.generate_state(1, np.uint64)[0])


def _run_point(args: tuple[SweepSpec, int, int, int]) -> dict:
    spec, value, repetition, index = args
    n_target = value if spec.variable == "n_target" else spec.n_target
    n_clock = value if spec.variable == "n_clock" else spec.n_clock
    if spec.variable == "seed":
        seed = point_seed(value, repetition)
    else:
        seed = point_seed(spec.seed, index)
    if ":" in spec.input_spec:
        vector_spec = spec.input_spec
    else:
        vector_spec = f"{spec.input_spec}:{n_target}"
    b, suggested_t = generate_vector(vector_spec, seed, n_clock)
    t = spec.t if spec.t is not None else suggested_t
    params = choose_parameters(
        b,
        n_clock,
        t=t,
        C=spec.C,
        postselect_mode=spec.postselect_mode,
        max_attempts=spec.max_attempts,
        seed=seed,
    )
    _, report = prepare_state(b, params)
    row = {
        "schema_version": SCHEMA_VERSION,
        "variable": spec.variable,
        "value": value,
        "repetition": repetition,
        "point_index": index,
        "seed": seed,
        "n_target": b.n_qubits,
        "n_clock": n_clock,
        "t": params.t,
        "C": params.C,
        "postselect_mode": params.postselect_mode,
        "fidelity": report.fidelity,
        "success_prob_analytic": report.success_prob_analytic,
        "success_prob_observed": report.success_prob_observed,
        "attempts": report.attempts,
        "clock_residual": report.clock_residual,
    }
    row.update(report.census.to_dict())
    return row


def run_sweep(spec: SweepSpec, workers: int = 1) -> list[dict]:
    """Run all points; returns rows in input order and writes CSV if asked."""
    points = []
    index = 0
    for value in spec.values:
        for repetition in range(spec.repetitions):
            points.append((spec, value, repetition, index))
            index += 1
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_run_point, points))
    else:
        rows = [_run_point(point) for point in points]
    if spec.output:
        write_sweep_csv(spec.output, rows)
    return rows


def write_sweep_csv(path: str, rows: list[dict]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=CSV_COLUMNS)
        writer.writeheader()
        for row in rows:
            writer.writerow({key: _csv_cell(row.get(key)) for key in CSV_COLUMNS})


def _csv_cell(value):
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return value
