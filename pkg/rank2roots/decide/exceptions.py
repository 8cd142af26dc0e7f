from typing import Any

from rank2roots.shared.exceptions import Rank2Error


class NoFiniteRootSystemError(Rank2Error):
    """Raised when a finite root system is requested for a scheme that admits none."""

    def __init__(self, scheme: str, details: dict[str, Any] | None = None) -> None:
        super().__init__(
            message=f"{scheme} admits no finite root system",
            exit_code=1,
            error_code="NO_FINITE_ROOT_SYSTEM",
            details=details or {"scheme": scheme},
        )
