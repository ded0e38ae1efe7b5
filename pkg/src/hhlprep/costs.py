"""Circuit-trace events and the gate/query cost ledger.

Circuits record what they did (gate name, register, power); the census
turns the record into counts under two accountings for the controlled
propagator ladder: "unit" charges one op per controlled gate, "queries"
charges the propagator power (so a full ladder costs 2^n_clock - 1
queries).  Controlled rotations are charged ceil(n_clock^(4/3)) ops each,
the cost of the arithmetic-circuit construction they stand in for, and
each Fourier transform is charged its standard n(n+1)/2-gate
decomposition.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import TraceFormatError

EVENT_KINDS = ("h", "ladder", "qft", "rotation", "measure")


def rotation_ops_for(n_clock: int) -> int:
    """ceil(n_clock^(4/3)) via integer arithmetic (no float-dust off-by-one)."""
    if n_clock < 1:
        raise TraceFormatError(f"n_clock must be >= 1, got {n_clock}")
    fourth = n_clock**4
    m = max(1, round(float(fourth) ** (1.0 / 3.0)))
    while m**3 < fourth:
        m += 1
    while (m - 1) ** 3 >= fourth:
        m -= 1
    return m


def qft_gates_for(n_clock: int) -> int:
    return n_clock * (n_clock + 1) // 2


@dataclass(frozen=True)
class TraceEvent:
    kind: str
    qubit: int | None = None
    power: int | None = None
    n_clock: int | None = None
    detail: str | None = None


@dataclass
class CircuitTrace:
    """Append-only record of the charged operations of one run."""

    events: list[TraceEvent] = field(default_factory=list)

    def hadamard(self, qubit: int) -> None:
        self.events.append(TraceEvent("h", qubit=qubit))

    def ladder(self, control: int, power: int) -> None:
        self.events.append(TraceEvent("ladder", qubit=control, power=power))

    def qft(self, n_clock: int, inverse: bool) -> None:
        self.events.append(
            TraceEvent("qft", n_clock=n_clock, detail="inverse" if inverse else "forward")
        )

    def rotation(self, n_clock: int, mode: str) -> None:
        self.events.append(TraceEvent("rotation", n_clock=n_clock, detail=mode))

    def measure(self, qubit: int) -> None:
        self.events.append(TraceEvent("measure", qubit=qubit))

    def extend(self, other: "CircuitTrace") -> None:
        self.events.extend(other.events)


@dataclass(frozen=True)
class CostReport:
    """Gate/query counts of one circuit under both ladder accountings."""

    hadamards: int = 0
    controlled_ladder_applications: int = 0
    oracle_queries: int = 0
    qft_gates: int = 0
    rotation_ops_charged: int = 0

    def total_charged(self, mode: str = "unit") -> int:
        if mode == "unit":
            ladder = self.controlled_ladder_applications
        elif mode == "queries":
            ladder = self.oracle_queries
        else:
            raise TraceFormatError(f"unknown accounting mode {mode!r}")
        return self.hadamards + ladder + self.qft_gates + self.rotation_ops_charged

    def combine(self, other: "CostReport") -> "CostReport":
        return CostReport(
            hadamards=self.hadamards + other.hadamards,
            controlled_ladder_applications=self.controlled_ladder_applications
            + other.controlled_ladder_applications,
            oracle_queries=self.oracle_queries + other.oracle_queries,
            qft_gates=self.qft_gates + other.qft_gates,
            rotation_ops_charged=self.rotation_ops_charged + other.rotation_ops_charged,
        )

    def to_dict(self) -> dict:
        return {
            "hadamards": self.hadamards,
            "controlled_ladder_applications": self.controlled_ladder_applications,
            "oracle_queries": self.oracle_queries,
            "qft_gates": self.qft_gates,
            "rotation_ops_charged": self.rotation_ops_charged,
            "total_charged_unit": self.total_charged("unit"),
            "total_charged_queries": self.total_charged("queries"),
        }


def gate_census(trace: CircuitTrace) -> CostReport:
    """Deterministic counts from a recorded trace; empty trace is all-zero."""
    hadamards = ladder = queries = qft = rotations = 0
    for ev in trace.events:
        if ev.kind == "h":
            hadamards += 1
        elif ev.kind == "ladder":
            if ev.power is None or ev.power < 1:
                raise TraceFormatError(f"ladder event without a valid power: {ev!r}")
            ladder += 1
            queries += ev.power
        elif ev.kind == "qft":
            if ev.n_clock is None:
                raise TraceFormatError(f"qft event without register width: {ev!r}")
            qft += qft_gates_for(ev.n_clock)
        elif ev.kind == "rotation":
            if ev.n_clock is None:
                raise TraceFormatError(f"rotation event without register width: {ev!r}")
            rotations += rotation_ops_for(ev.n_clock)
        elif ev.kind == "measure":
            pass  # not charged
        else:
            raise TraceFormatError(f"unknown trace event kind {ev.kind!r}")
    return CostReport(
        hadamards=hadamards,
        controlled_ladder_applications=ladder,
        oracle_queries=queries,
        qft_gates=qft,
        rotation_ops_charged=rotations,
    )
