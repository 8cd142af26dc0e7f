from typing import List, Tuple

from pydantic import BaseModel, Field

Seq = Tuple[int, ...]

BASE_SEQUENCE: Seq = (1, 1, 1)


class MoveStep(BaseModel):
    """One reduction move: rotate (and optionally reflect), then contract a 1."""

    rotation: int = Field(..., ge=0)
    reflected: bool = False
    position: int = Field(..., ge=0)
    before: Seq
    after: Seq

    class Config:
        frozen = True


class MoveCertificate(BaseModel):
    """Replayable chain of contractions from a sequence down to (1, 1, 1)."""

    start: Seq
    steps: List[MoveStep] = Field(default_factory=list)

    class Config:
        frozen = True

    @property
    def end(self) -> Seq:
        return self.steps[-1].after if self.steps else self.start
