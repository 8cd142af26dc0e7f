from __future__ import annotations

from typing import Any


class Rank2Error(Exception):
    """Base exception for all library errors."""

    def __init__(
        self,
        message: str,
        exit_code: int = 3,
        error_code: str | None = None,
        details: dict[str, Any] | None = None,
    ) -> None:
        super().__init__(message)
        self.message = message
        self.exit_code = exit_code
        self.error_code = error_code or self.__class__.__name__
        self.details = details or {}

    def to_dict(self) -> dict[str, Any]:
        """Convert exception to dictionary format."""
        error_dict = {
            "error": self.error_code,
            "message": self.message,
            "exit_code": self.exit_code,
        }
        if self.details:
            error_dict["details"] = self.details
        return error_dict


class InputValidationError(Rank2Error):
    """Raised when user supplied data is malformed."""

    def __init__(
        self,
        message: str = "Validation error",
        details: dict[str, Any] | None = None,
    ) -> None:
        super().__init__(
            message=message,
            exit_code=2,
            error_code="VALIDATION_ERROR",
            details=details,
        )


class SchemeKindError(Rank2Error):
    """Raised when an operation gets a chain where it needs a cycle, or the reverse."""

    def __init__(self, expected: str, actual: str) -> None:
        super().__init__(
            message=f"Operation requires a {expected} scheme, got a {actual}",
            exit_code=2,
            error_code="SCHEME_KIND_ERROR",
            details={"expected": expected, "actual": actual},
        )


class NotInAplusError(Rank2Error):
    """Raised when a sequence is required to lie in the positive class and does not."""

    def __init__(self, sequence: tuple[int, ...], reason: str = "not in A+") -> None:
        super().__init__(
            message=f"Sequence {list(sequence)} is {reason}",
            exit_code=2,
            error_code="NOT_IN_APLUS",
            details={"sequence": list(sequence)},
        )


class NotUnimodularError(Rank2Error):
    """Raised when a matrix is not invertible over the integers."""

    def __init__(self, determinant: int) -> None:
        super().__init__(
            message=f"Matrix has determinant {determinant}, expected +1 or -1",
            exit_code=2,
            error_code="NOT_UNIMODULAR",
            details={"determinant": determinant},
        )


class InfiniteOrderError(Rank2Error):
    """Raised when a finite order is required and the matrix has none."""

    def __init__(
        self,
        message: str = "Matrix has infinite order",
        details: dict[str, Any] | None = None,
    ) -> None:
        super().__init__(
            message=message,
            exit_code=1,
            error_code="INFINITE_ORDER",
            details=details,
        )


class CertificateError(Rank2Error):
    """Raised when replaying a certificate fails."""

    def __init__(
        self,
        message: str = "Certificate replay failed",
        details: dict[str, Any] | None = None,
    ) -> None:
        super().__init__(
            message=message,
            exit_code=1,
            error_code="CERTIFICATE_ERROR",
            details=details,
        )


class InternalInvariantError(Rank2Error):
    """Raised when a proven identity fails; always an implementation bug."""

    def __init__(
        self,
        message: str = "Internal invariant violated",
        details: dict[str, Any] | None = None,
    ) -> None:
        super().__init__(
            message=message,
            exit_code=3,
            error_code="INTERNAL_INVARIANT_ERROR",
            details=details,
        )
