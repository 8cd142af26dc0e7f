from enum import Enum
from typing import List, Optional, Tuple

from pydantic import BaseModel, Field

from rank2roots.aplus.models import Seq
from rank2roots.scheme.models import CartanScheme2


class CoveringKind(str, Enum):
    IDENTITY = "identity"
    K_FOLD = "k_fold"
    UNIVERSAL = "universal"
    CHAIN_DOUBLE = "chain_double"


class CoveringRelation(BaseModel):
    """Covering pi: cover -> base, with pi stored as a list indexed by cover object."""

    kind: CoveringKind
    base: CartanScheme2
    cover: CartanScheme2
    fold: int = Field(..., ge=1)
    object_map: Tuple[int, ...]

    class Config:
        frozen = True

    def fibre(self, b: int) -> List[int]:
        return [x for x, image in enumerate(self.object_map) if image == b]


class ChainQuotient(BaseModel):
    label: int
    object: int
    char_seq: Seq
    spine: Seq


class QuotientReport(BaseModel):
    scheme: CartanScheme2
    chain_quotients: List[ChainQuotient] = Field(default_factory=list)
    half_quotient: Optional[CartanScheme2] = None

    @property
    def chain_spines(self) -> set[Seq]:
        return {q.spine for q in self.chain_quotients}
