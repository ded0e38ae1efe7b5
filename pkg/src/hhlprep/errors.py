"""Exception types raised by the simulator and pipelines."""


class SimulationError(Exception):
    """Base class for all hhlprep errors."""


class CapacityError(SimulationError):
    """Register layout exceeds the simulator qubit cap."""


class LayoutError(SimulationError, ValueError):
    """Invalid register layout or qubit index."""


class GateError(SimulationError, ValueError):
    """Gate fails its unitarity or shape requirements."""


class ShapeError(SimulationError, ValueError):
    """Operands have incompatible dimensions."""


class RegisterOverlapError(SimulationError, ValueError):
    """Control qubit lies inside the register an action operates on."""


class ValidationError(SimulationError, ValueError):
    """Input data violates a documented invariant (zero vector, bad params)."""


class MustEmbedError(SimulationError, ValueError):
    """Complex amplitudes need the Hermitian embedding, not the diagonal path."""


class ImpossibleOutcomeError(SimulationError):
    """Requested measurement outcome has (numerically) zero probability."""


class RotationDomainError(SimulationError, ValueError):
    """An occupied clock value drives the ancilla rotation out of [-1, 1]."""


class PreconditionError(SimulationError):
    """A circuit stage was entered with registers in a disallowed state."""


class AttemptsExhaustedError(SimulationError):
    """Sampled post-selection failed on every allowed attempt."""

    def __init__(self, attempts: int):
        self.attempts = attempts
        super().__init__(
            f"post-selection failed on all {attempts} attempts; "
            "raise max_attempts or use exact mode"
        )


class SingularSystemError(SimulationError, ValueError):
    """Linear system matrix is singular (or numerically so)."""


class AliasingError(SimulationError, ValueError):
    """Scaled eigenvalues overflow the signed clock range."""

    def __init__(self, message: str, suggested_t: float):
        self.suggested_t = suggested_t
        super().__init__(f"{message} (suggested t = {suggested_t!r})")


class TraceFormatError(SimulationError, ValueError):
    """Circuit trace contains events the census does not recognize."""


class InputFormatError(SimulationError, ValueError):
    """Vector / system file or generator spec cannot be parsed."""
