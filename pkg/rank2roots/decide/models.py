from typing import Annotated, List, Literal, Optional, Union

from pydantic import BaseModel, Field

from rank2roots.aplus.models import Seq
from rank2roots.scheme.models import CartanScheme2


class StepBase(BaseModel):
    class Config:
        frozen = True


class ChainToCycleStep(StepBase):
    """Replace a chain by its double cover."""

    step: Literal["chain_to_cycle"] = "chain_to_cycle"
    before: CartanScheme2
    after: CartanScheme2


class NonCSDoubleStep(StepBase):
    """Replace a cycle that is not centrally symmetric by its double."""

    step: Literal["non_cs_double"] = "non_cs_double"
    before: CartanScheme2
    after: CartanScheme2


class ContractStep(StepBase):
    """Contract the 1 at ``position`` of the half sequence."""

    step: Literal["contract"] = "contract"
    position: int
    before: Seq
    after: Seq


class ZeroCaseStep(StepBase):
    step: Literal["zero_case"] = "zero_case"
    objects: int
    all_zero: bool
    walk_closes: bool
    finite: bool


class AllGeTwoStep(StepBase):
    step: Literal["all_ge_two"] = "all_ge_two"
    half: Seq
    finite: Literal[False] = False


class TripleOnesStep(StepBase):
    step: Literal["triple_ones"] = "triple_ones"
    half: Seq
    finite: bool


class BaseFourStep(StepBase):
    step: Literal["base_four"] = "base_four"
    half: Seq
    c1: int
    finite: bool


class SmallCaseOracleStep(StepBase):
    """Universal-cover criterion for the cases the reduction does not cover."""

    step: Literal["small_case_oracle"] = "small_case_oracle"
    half: Seq
    h: Optional[int] = None
    finite: bool


CertificateStep = Annotated[
    Union[
        ChainToCycleStep,
        NonCSDoubleStep,
        ContractStep,
        ZeroCaseStep,
        AllGeTwoStep,
        TripleOnesStep,
        BaseFourStep,
        SmallCaseOracleStep,
    ],
    Field(discriminator="step"),
]

TERMINAL_STEPS = (ZeroCaseStep, AllGeTwoStep, TripleOnesStep, BaseFourStep, SmallCaseOracleStep)


class Stats(BaseModel):
    """Invariants of a finite scheme: h (6|A| - q) = 24 and |R+| = 12 |A| / (6|A| - q)."""

    objects: int
    q: int
    h: int
    positive_roots: int
    m: int
    max_entry: int
    entry_bound: int

    class Config:
        frozen = True


class Decision(BaseModel):
    scheme: CartanScheme2
    finite: bool
    irreducible: bool
    certificate: List[CertificateStep] = Field(default_factory=list)
    stats: Optional[Stats] = None

    class Config:
        frozen = True

    @property
    def verdict(self) -> str:
        return "finite" if self.finite else "not finite"


class ExtremalPair(BaseModel):
    n: int
    cycle: CartanScheme2
    chain: CartanScheme2
    base_case: bool = False
