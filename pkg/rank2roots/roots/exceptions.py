from typing import Any

from rank2roots.shared.exceptions import Rank2Error


class AxiomViolationError(Rank2Error):
    """Raised when a root system fails one of the axioms (R1) to (R4)."""

    def __init__(
        self,
        message: str = "Root system axioms violated",
        details: dict[str, Any] | None = None,
    ) -> None:
        super().__init__(
            message=message,
            exit_code=1,
            error_code="AXIOM_VIOLATION_ERROR",
            details=details,
        )


class ReducibleRootSystemError(Rank2Error):
    """Raised when an operation needs an irreducible root system."""

    def __init__(self, scheme: str) -> None:
        super().__init__(
            message=f"Root system of {scheme} is reducible",
            exit_code=2,
            error_code="REDUCIBLE_ROOT_SYSTEM_ERROR",
            details={"scheme": scheme},
        )


class RootSystemMismatchError(Rank2Error):
    """Raised when roots are attached to a different scheme than expected."""

    def __init__(self, expected: str, actual: str) -> None:
        super().__init__(
            message=f"Roots belong to {actual}, expected {expected}",
            exit_code=2,
            error_code="ROOT_SYSTEM_MISMATCH_ERROR",
            details={"expected": expected, "actual": actual},
        )
