from enum import Enum
from typing import Any, List, Optional

from pydantic import BaseModel, Field, model_serializer, model_validator

from rank2roots.aplus.models import Seq

LABELS = (1, 2)


class SchemeKind(str, Enum):
    """Shape of the object change diagram."""

    CYCLE = "cycle"
    CHAIN = "chain"


class CartanMatrix2(BaseModel):
    """Generalized Cartan matrix [[c11, c12], [c21, c22]] of one object."""

    c11: int = 2
    c12: int
    c21: int
    c22: int = 2

    class Config:
        frozen = True

    def entry(self, i: int, j: int) -> int:
        return {(1, 1): self.c11, (1, 2): self.c12, (2, 1): self.c21, (2, 2): self.c22}[(i, j)]

    def to_rows(self) -> list[list[int]]:
        return [[self.c11, self.c12], [self.c21, self.c22]]


class CartanScheme2(BaseModel):
    """
    Connected rank-two Cartan scheme.

    A cycle stores its characteristic sequence at (label 1, object 0); a chain
    with N objects stores its spine of length N + 1. Only the shape is checked
    here; axiom checks live in ``scheme.service.validate``.
    """

    kind: SchemeKind
    sequence: Seq

    class Config:
        frozen = True

    @model_validator(mode="before")
    @classmethod
    def from_document(cls, data: Any) -> Any:
        if isinstance(data, dict) and "sequence" not in data:
            key = "char_seq" if data.get("kind") == SchemeKind.CYCLE.value else "spine"
            if key in data:
                return {"kind": data["kind"], "sequence": data[key]}
        return data

    @model_serializer
    def to_document(self) -> dict[str, Any]:
        key = "char_seq" if self.is_cycle else "spine"
        return {"kind": self.kind.value, key: list(self.sequence)}

    @model_validator(mode="after")
    def check_shape(self) -> "CartanScheme2":
        n = len(self.sequence)
        if self.kind == SchemeKind.CYCLE and (n < 2 or n % 2):
            raise ValueError(f"A cycle needs an even characteristic sequence of length >= 2, got {n}")
        if self.kind == SchemeKind.CHAIN and n < 2:
            raise ValueError(f"A chain spine needs length >= 2, got {n}")
        return self

    @property
    def is_cycle(self) -> bool:
        return self.kind == SchemeKind.CYCLE

    @property
    def objects(self) -> int:
        return len(self.sequence) if self.is_cycle else len(self.sequence) - 1

    def __str__(self) -> str:
        body = ",".join(str(c) for c in self.sequence)
        return f"{self.kind.value}({body})"


class Violation(BaseModel):
    axiom: str
    object: Optional[int] = None
    message: str


class ValidationReport(BaseModel):
    """Fatal axiom violations and non-fatal obstructions to a root system."""

    scheme: CartanScheme2
    violations: List[Violation] = Field(default_factory=list)
    obstructions: List[Violation] = Field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.violations

    @property
    def admits_root_system(self) -> Optional[bool]:
        """False when an obstruction rules a root system out, None when undecided here."""
        return False if self.obstructions else None
