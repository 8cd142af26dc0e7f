from dataclasses import dataclass

from pydantic import BaseModel

from rank2roots.mat2cf.core import Mat2


@dataclass(frozen=True, slots=True)
class GroupoidState:
    """Morphism of the Weyl groupoid out of the base object: its target and matrix."""

    object: int
    matrix: Mat2
    length: int


class BFSReport(BaseModel):
    """Census of Hom(a, -) for the base object a, or a note that the budget ran out."""

    cap: int
    budget_exceeded: bool
    total_states: int
    end_size: int | None = None
    c3_holds: bool = True
    end_even: int = 0
    end_odd: int = 0
    max_length: int = 0

    @property
    def end_all_even(self) -> bool:
        return self.end_odd == 0
