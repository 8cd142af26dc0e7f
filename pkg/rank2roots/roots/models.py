from typing import List, Tuple

from pydantic import BaseModel, Field, model_validator

from rank2roots.scheme.models import CartanScheme2, Violation

Root = Tuple[int, int]


class RootSystem2(BaseModel):
    """Per-object root sets in the basis alpha_1, alpha_2; each set is kept sorted."""

    scheme: CartanScheme2
    roots: Tuple[Tuple[Root, ...], ...]

    class Config:
        frozen = True

    @model_validator(mode="after")
    def check_object_count(self) -> "RootSystem2":
        if len(self.roots) != self.scheme.objects:
            raise ValueError(f"Expected root sets for {self.scheme.objects} objects, got {len(self.roots)}")
        return self

    @staticmethod
    def of(scheme: CartanScheme2, sets: List[set[Root]]) -> "RootSystem2":
        return RootSystem2(scheme=scheme, roots=tuple(tuple(sorted(s)) for s in sets))

    def root_set(self, a: int) -> set[Root]:
        return set(self.roots[a])

    def positive_roots(self, a: int) -> List[Root]:
        return [r for r in self.roots[a] if r[0] >= 0 and r[1] >= 0]


class AxiomReport(BaseModel):
    violations: List[Violation] = Field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.violations

    def axioms_failed(self) -> set[str]:
        return {v.axiom for v in self.violations}
