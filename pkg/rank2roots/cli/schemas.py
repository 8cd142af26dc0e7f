import json
from typing import List, Literal, Optional

from pydantic import BaseModel, ValidationError, model_validator

from rank2roots.scheme.models import CartanScheme2, SchemeKind
from rank2roots.shared.exceptions import InputValidationError


class SchemeDocument(BaseModel):
    """Wire form of a scheme: {"kind": "cycle", "char_seq": [...]} or {"kind": "chain", "spine": [...]}."""

    kind: Literal["cycle", "chain"]
    char_seq: Optional[List[int]] = None
    spine: Optional[List[int]] = None

    @model_validator(mode="after")
    def check_payload(self) -> "SchemeDocument":
        expected, other = ("char_seq", "spine") if self.kind == "cycle" else ("spine", "char_seq")
        if getattr(self, expected) is None:
            raise ValueError(f"A {self.kind} document needs a '{expected}' array")
        if getattr(self, other) is not None:
            raise ValueError(f"A {self.kind} document must not carry '{other}'")
        return self

    @property
    def sequence(self) -> List[int]:
        return self.char_seq if self.kind == "cycle" else self.spine

    def to_scheme(self) -> CartanScheme2:
        try:
            return CartanScheme2(kind=SchemeKind(self.kind), sequence=tuple(self.sequence))
        except ValidationError as e:
            raise InputValidationError(
                f"Invalid {self.kind} document",
                details={"errors": [err["msg"] for err in e.errors()]},
            )

    @staticmethod
    def from_scheme(scheme: CartanScheme2) -> "SchemeDocument":
        return SchemeDocument.model_validate(scheme.model_dump())


def parse_sequence(text: str) -> List[int]:
    """Comma-separated integers, e.g. ``5,1,2,2``."""
    try:
        return [int(part) for part in text.replace(" ", "").split(",") if part]
    except ValueError:
        raise InputValidationError(f"Expected comma-separated integers, got '{text}'")


def parse_document(text: str) -> SchemeDocument:
    try:
        return SchemeDocument.model_validate_json(text)
    except ValidationError as e:
        raise InputValidationError(
            "Invalid scheme document",
            details={"errors": [err["msg"] for err in e.errors()]},
        )


def parse_batch_line(line: str) -> SchemeDocument:
    """A JSON scheme document or ``cycle 5,1,2,2`` / ``chain 1,2,1``."""
    line = line.strip()
    if line.startswith("{"):
        return parse_document(line)
    kind, _, body = line.partition(" ")
    if kind not in ("cycle", "chain"):
        raise InputValidationError(f"Batch line must start with 'cycle' or 'chain': '{line}'")
    key = "char_seq" if kind == "cycle" else "spine"
    return SchemeDocument.model_validate({"kind": kind, key: parse_sequence(body)})


def dumps(payload: object, indent: int) -> str:
    return json.dumps(payload, indent=indent, sort_keys=True)
