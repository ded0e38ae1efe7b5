"""Qubit register layout shared by every circuit in the package.

Bit-order convention (fixed, relied on throughout): the target register
occupies the least-significant bits of the amplitude index (target qubit 0
is the LSB of the target value j), followed by the optional embedding-flag
qubit, then the clock register (clock qubit 0 is the LSB of the clock
value k), and finally the ancilla as the most-significant bit.  A basis
index therefore reads  a | k | f | j  from high bits to low bits.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import CapacityError, LayoutError

DEFAULT_QUBIT_CAP = 26  # ~1 GiB of complex128 amplitudes


@dataclass(frozen=True)
class RegisterLayout:
    """Partition of the simulator qubits into target / flag / clock / ancilla."""

    n_target: int
    n_clock: int
    has_flag: bool = False
    qubit_cap: int = DEFAULT_QUBIT_CAP

    def __post_init__(self):
        if self.n_target < 1:
            raise LayoutError(f"need at least one target qubit, got {self.n_target}")
        if self.n_clock < 1:
            raise LayoutError(f"need at least one clock qubit, got {self.n_clock}")
        if self.total > self.qubit_cap:
            raise CapacityError(
                f"layout needs {self.total} qubits, cap is {self.qubit_cap}"
            )

    @property
    def n_flag(self) -> int:
        return 1 if self.has_flag else 0

    @property
    def total(self) -> int:
        return self.n_target + self.n_flag + self.n_clock + 1

    @property
    def dim(self) -> int:
        return 1 << self.total

    # -- qubit indices ---------------------------------------------------

    @property
    def target_qubits(self) -> range:
        return range(0, self.n_target)

    @property
    def flag_qubit(self) -> int:
        if not self.has_flag:
            raise LayoutError("layout has no flag qubit")
        return self.n_target

    @property
    def clock_offset(self) -> int:
        return self.n_target + self.n_flag

    @property
    def clock_qubits(self) -> range:
        return range(self.clock_offset, self.clock_offset + self.n_clock)

    @property
    def ancilla_qubit(self) -> int:
        return self.total - 1

    @property
    def register_width(self) -> int:
        """Width of the register a propagator acts on (target plus flag)."""
        return self.n_target + self.n_flag

    # -- index arithmetic ------------------------------------------------

    def target_of(self, index: int) -> int:
        return index & ((1 << self.n_target) - 1)

    def flag_of(self, index: int) -> int:
        return (index >> self.n_target) & 1 if self.has_flag else 0

    def clock_of(self, index: int) -> int:
        return (index >> self.clock_offset) & ((1 << self.n_clock) - 1)

    def ancilla_of(self, index: int) -> int:
        return (index >> self.ancilla_qubit) & 1

    def index_of(self, target: int, clock: int, ancilla: int, flag: int = 0) -> int:
        if not 0 <= target < (1 << self.n_target):
            raise LayoutError(f"target value {target} out of range")
        if not 0 <= clock < (1 << self.n_clock):
            raise LayoutError(f"clock value {clock} out of range")
        if ancilla not in (0, 1) or (flag and not self.has_flag):
            raise LayoutError("bad ancilla or flag value")
        return (
            target
            | (flag << self.n_target)
            | (clock << self.clock_offset)
            | (ancilla << self.ancilla_qubit)
        )
