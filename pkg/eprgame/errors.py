from typing import List, Sequence


class EprGameError(ValueError):
    """Base class for every error raised by eprgame."""


class InputError(EprGameError):
    """A file or document does not match its schema."""

    def __init__(self, message: str, field: str = ""):
        self.field = field
        if field:
            message = f"{field}: {message}"
        super().__init__(message)


class NotSymmetric(EprGameError):
    def __init__(self, failed: Sequence[str]):
        self.failed: List[str] = list(failed)
        super().__init__(
            f"Payoff table is not symmetric; failed equalities: {', '.join(self.failed)}"
        )


class NotABehavior(EprGameError):
    def __init__(self, violations: Sequence[str]):
        self.violations: List[str] = list(violations)
        super().__init__(
            f"Joint probabilities are not a normalized no-signaling behavior: {', '.join(self.violations)}"
        )


class Infeasible(EprGameError):
    def __init__(self, violations: Sequence[str]):
        self.violations: List[str] = list(violations)
        super().__init__(f"Completion is infeasible: {', '.join(self.violations)}")


class ZeroConstraintViolated(EprGameError):
    def __init__(self, indices: Sequence[int]):
        self.indices: List[int] = list(indices)
        names = ", ".join(f"p{i}" for i in self.indices)
        super().__init__(f"Embedding zero constraints violated at {names}")


class ConstraintViolation(EprGameError):
    def __init__(self, violations: Sequence[str]):
        self.violations: List[str] = list(violations)
        super().__init__(
            f"Behavior does not satisfy the embedded constraint system: {', '.join(self.violations)}"
        )


class InvalidState(EprGameError):
    pass


class InvalidSetup(EprGameError):
    pass


class SamplingExhausted(EprGameError):
    def __init__(self, draws: int):
        self.draws = draws
        super().__init__(f"No feasible behavior found after {draws} draws")
