from rank2roots.shared.exceptions import Rank2Error


class CoveringConditionError(Rank2Error):
    """Raised when roots are lifted to a cover on which (C3) fails."""

    def __init__(self, cover: str, fold: int, end_order: str) -> None:
        super().__init__(
            message=f"(C3) fails on {cover}: the degree {fold} does not divide |End(a)| = {end_order} of the base",
            exit_code=2,
            error_code="COVERING_CONDITION_ERROR",
            details={"cover": cover, "fold": fold, "end_order": end_order},
        )
