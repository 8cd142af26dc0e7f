"""
Connected rank-two Cartan schemes and their object change diagrams.

Cycle edge k joins objects k and k+1 (mod |A|) and carries c[k]; chain edge k
joins objects k-1 and k, with edges 0 and N being loops at the two ends. Edge
k is labelled 1 when k is even and 2 when k is odd. The off-diagonal entry
c^a_ij of an object is minus the value on its i-labelled edge.
"""

from __future__ import annotations

import logging
from collections import deque
from typing import Sequence

from pydantic import ValidationError

from rank2roots.aplus.models import Seq
from rank2roots.aplus.service import dihedral_normal_form
from rank2roots.mat2cf.core import Mat2
from rank2roots.scheme.models import (
    LABELS,
    CartanMatrix2,
    CartanScheme2,
    SchemeKind,
    ValidationReport,
    Violation,
)
from rank2roots.shared.exceptions import InputValidationError, SchemeKindError

logger = logging.getLogger(__name__)


def _build(kind: SchemeKind, s: Sequence[int]) -> CartanScheme2:
    try:
        return CartanScheme2(kind=kind, sequence=tuple(s))
    except ValidationError as e:
        raise InputValidationError(
            f"Invalid {kind.value} sequence {list(s)}",
            details={"errors": [err["msg"] for err in e.errors()]},
        )


def _reject_negative(s: Sequence[int]) -> None:
    negative = [k for k, c in enumerate(s) if c < 0]
    if negative:
        raise InputValidationError(
            "Sequence entries must be nonnegative",
            details={"sequence": list(s), "positions": negative},
        )


def cycle_from_char_seq(s: Sequence[int]) -> CartanScheme2:
    _reject_negative(s)
    return _build(SchemeKind.CYCLE, s)


def chain_from_spine(s: Sequence[int]) -> CartanScheme2:
    _reject_negative(s)
    return _build(SchemeKind.CHAIN, s)


def _check_label(label: int) -> None:
    if label not in LABELS:
        raise InputValidationError(f"Label must be 1 or 2, got {label}")


def _check_object(scheme: CartanScheme2, a: int) -> None:
    if not 0 <= a < scheme.objects:
        raise InputValidationError(
            f"Object {a} out of range for {scheme}",
            details={"object": a, "objects": scheme.objects},
        )


def _edge(scheme: CartanScheme2, label: int, a: int) -> tuple[int, int]:
    """(neighbour, edge index) of the ``label`` edge at object ``a``."""
    parity = 0 if label == 1 else 1
    if scheme.is_cycle:
        n = len(scheme.sequence)
        if a % 2 == parity:
            return (a + 1) % n, a
        return (a - 1) % n, (a - 1) % n
    last = len(scheme.sequence) - 1
    if a % 2 == parity:
        return (a - 1 if a > 0 else a), a
    return (a + 1 if a + 1 < last else a), a + 1


def object_count(scheme: CartanScheme2) -> int:
    return scheme.objects


def rho(scheme: CartanScheme2, label: int, a: int) -> int:
    _check_label(label)
    _check_object(scheme, a)
    return _edge(scheme, label, a)[0]


def edge_value(scheme: CartanScheme2, label: int, a: int) -> int:
    """Value on the ``label`` edge at ``a``, i.e. -c^a_ij."""
    return scheme.sequence[_edge(scheme, label, a)[1]]


def cartan_matrix(scheme: CartanScheme2, a: int) -> CartanMatrix2:
    _check_object(scheme, a)
    return CartanMatrix2(c12=-edge_value(scheme, 1, a), c21=-edge_value(scheme, 2, a))


def reflection(scheme: CartanScheme2, label: int, a: int) -> Mat2:
    """sigma_i^a acting on coordinate columns in the basis alpha_1, alpha_2."""
    _check_label(label)
    _check_object(scheme, a)
    value = edge_value(scheme, label, a)
    if label == 1:
        return Mat2(-1, value, 0, 1)
    return Mat2(1, 0, value, -1)


def off_diagonal_entries(scheme: CartanScheme2) -> list[tuple[int, int]]:
    """(c12, c21) for every object, in object order."""
    return [(-edge_value(scheme, 1, a), -edge_value(scheme, 2, a)) for a in range(scheme.objects)]


def alternating_walk(scheme: CartanScheme2, label: int, a: int, length: int) -> Seq:
    """Edge values read while reflecting alternately by ``label`` and the other label, starting at ``a``."""
    _check_label(label)
    _check_object(scheme, a)
    values = []
    current = a
    for _ in range(length):
        neighbour, k = _edge(scheme, label, current)
        values.append(scheme.sequence[k])
        current = neighbour
        label = 3 - label
    return tuple(values)


def char_seq(scheme: CartanScheme2, label: int, a: int) -> Seq:
    """Characteristic sequence of a cycle with respect to the reference pair (label, a)."""
    if not scheme.is_cycle:
        raise SchemeKindError(expected="cycle", actual=scheme.kind.value)
    return alternating_walk(scheme, label, a, scheme.objects)


def is_centrally_symmetric(scheme: CartanScheme2) -> bool:
    if not scheme.is_cycle:
        raise SchemeKindError(expected="cycle", actual=scheme.kind.value)
    s = scheme.sequence
    half = len(s) // 2
    return s[:half] == s[half:]


def reducible_walk_closes(scheme: CartanScheme2) -> bool:
    """Whether (rho_1 rho_2)^2 fixes every object."""
    for a in range(scheme.objects):
        current = a
        for _ in range(2):
            current = rho(scheme, 1, rho(scheme, 2, current))
        if current != a:
            return False
    return True


def _is_connected(scheme: CartanScheme2) -> bool:
    seen = {0}
    queue = deque([0])
    while queue:
        a = queue.popleft()
        for label in LABELS:
            b = rho(scheme, label, a)
            if b not in seen:
                seen.add(b)
                queue.append(b)
    return len(seen) == scheme.objects


def validate(scheme: CartanScheme2) -> ValidationReport:
    """Check (M1), (M2), (C1), (C2), connectedness and the mixed-zero obstruction."""
    report = ValidationReport(scheme=scheme)
    for a in range(scheme.objects):
        matrix = cartan_matrix(scheme, a)
        for i, j in ((1, 2), (2, 1)):
            if matrix.entry(i, j) > 0:
                report.violations.append(
                    Violation(axiom="M1", object=a, message=f"c{i}{j} = {matrix.entry(i, j)} is positive")
                )
        if (matrix.c12 == 0) != (matrix.c21 == 0):
            report.obstructions.append(
                Violation(
                    axiom="M2",
                    object=a,
                    message=f"c12 = {matrix.c12} and c21 = {matrix.c21}: mixed zeros admit no root system",
                )
            )
        for label in LABELS:
            b = rho(scheme, label, a)
            if rho(scheme, label, b) != a:
                report.violations.append(Violation(axiom="C1", object=a, message=f"rho_{label} is not an involution"))
            other = 3 - label
            if cartan_matrix(scheme, b).entry(label, other) != matrix.entry(label, other):
                report.violations.append(
                    Violation(axiom="C2", object=a, message=f"c{label}{other} differs across the {label}-edge")
                )
    if not _is_connected(scheme):
        report.violations.append(Violation(axiom="connected", message="object change diagram is not connected"))
    if report.violations or report.obstructions:
        logger.info(
            "Validation of %s: %d violations, %d obstructions",
            scheme,
            len(report.violations),
            len(report.obstructions),
        )
    return report


def equivalent(s1: CartanScheme2, s2: CartanScheme2) -> bool:
    if s1.kind != s2.kind:
        return False
    if s1.is_cycle:
        return len(s1.sequence) == len(s2.sequence) and dihedral_normal_form(s1.sequence) == dihedral_normal_form(
            s2.sequence
        )
    return s1.sequence == s2.sequence or s1.sequence == s2.sequence[::-1]
