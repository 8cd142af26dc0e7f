"""
Sequence calculus for the sets A (eta product equal to -identity) and A+.

Positions and gaps are 0-based and cyclic.
"""

from __future__ import annotations

import logging
from typing import Sequence

from rank2roots.aplus.models import BASE_SEQUENCE, MoveCertificate, MoveStep, Seq
from rank2roots.mat2cf.core import Mat2
from rank2roots.mat2cf.service import eta, eta_product
from rank2roots.shared.exceptions import (
    CertificateError,
    InputValidationError,
    InternalInvariantError,
    NotInAplusError,
)

logger = logging.getLogger(__name__)


def is_in_A(s: Sequence[int]) -> bool:
    return len(s) >= 1 and eta_product(s).is_minus_identity()


def is_in_Aplus(s: Sequence[int]) -> bool:
    if len(s) < 1 or any(c < 1 for c in s):
        return False
    prefix = Mat2.identity()
    for c in s[:-1]:
        prefix = prefix @ eta(c)
        if prefix.a < 0 or prefix.c < 0:
            return False
    return (prefix @ eta(s[-1])).is_minus_identity()


def contract(s: Sequence[int], pos: int) -> Seq:
    """Remove the 1 at ``pos`` and decrement both cyclic neighbours."""
    n = len(s)
    if n < 3:
        raise InputValidationError("Contraction needs at least 3 entries", details={"sequence": list(s)})
    pos %= n
    if s[pos] != 1:
        raise InputValidationError(
            f"Entry at position {pos} is {s[pos]}, expected 1",
            details={"sequence": list(s), "position": pos},
        )
    entries = list(s)
    entries[(pos - 1) % n] -= 1
    entries[(pos + 1) % n] -= 1
    del entries[pos]
    return tuple(entries)


def expand(s: Sequence[int], gap: int) -> Seq:
    """Insert a 1 after position ``gap`` and increment both entries around it."""
    n = len(s)
    if n < 2:
        raise InputValidationError("Expansion needs at least 2 entries", details={"sequence": list(s)})
    gap %= n
    entries = list(s)
    entries[gap] += 1
    entries[(gap + 1) % n] += 1
    entries.insert(gap + 1, 1)
    return tuple(entries)


def inserted_position(n: int, gap: int) -> int:
    """Index of the new 1 produced by ``expand`` on a sequence of length ``n``."""
    return gap % n + 1


def rotate(s: Sequence[int], r: int) -> Seq:
    if not s:
        return ()
    r %= len(s)
    return tuple(s[r:]) + tuple(s[:r])


def dihedral_orbit(s: Sequence[int]) -> list[Seq]:
    """All rotations of ``s`` followed by all rotations of its reversal."""
    forward = tuple(s)
    backward = forward[::-1]
    return [rotate(forward, r) for r in range(len(forward))] + [rotate(backward, r) for r in range(len(backward))]


def dihedral_normal_form(s: Sequence[int]) -> Seq:
    if not s:
        return ()
    return min(dihedral_orbit(s))


def _reducible_one(s: Seq) -> int | None:
    n = len(s)
    for p in range(n):
        if s[p] == 1 and s[(p - 1) % n] >= 2 and s[(p + 1) % n] >= 2:
            return p
    return None


def reduce_certificate(s: Sequence[int]) -> MoveCertificate:
    """Contract ``s`` down to (1, 1, 1), rotating the chosen 1 to position 1 at every step."""
    current = tuple(s)
    if not is_in_Aplus(current):
        raise NotInAplusError(current)

    steps: list[MoveStep] = []
    while len(current) > 3:
        p = _reducible_one(current)
        if p is None:
            logger.error("No contractible 1 in A+ sequence %s", current)
            raise InternalInvariantError(
                "A+ sequence of length > 3 without a 1 between entries >= 2",
                details={"sequence": list(current)},
            )
        r = (p - 1) % len(current)
        before = rotate(current, r)
        after = contract(before, 1)
        steps.append(MoveStep(rotation=r, reflected=False, position=1, before=before, after=after))
        current = after

    if current != BASE_SEQUENCE:
        raise InternalInvariantError(
            "Reduction did not end at (1, 1, 1)",
            details={"start": list(s), "end": list(current)},
        )
    logger.debug("Reduced %s to (1, 1, 1) in %d steps", tuple(s), len(steps))
    return MoveCertificate(start=tuple(s), steps=steps)


def replay_certificate(s: Sequence[int], certificate: MoveCertificate) -> bool:
    """Replay every move from ``s``; raises CertificateError on the first mismatch."""
    current = tuple(s)
    if certificate.start != current:
        raise CertificateError(
            "Certificate starts from a different sequence",
            details={"expected": list(current), "recorded": list(certificate.start)},
        )
    for index, step in enumerate(certificate.steps):
        moved = current[::-1] if step.reflected else current
        moved = rotate(moved, step.rotation)
        if moved != step.before:
            raise CertificateError(
                f"Step {index}: rotation does not reproduce the recorded sequence",
                details={"step": index, "computed": list(moved), "recorded": list(step.before)},
            )
        if not is_in_Aplus(moved):
            raise CertificateError(f"Step {index}: intermediate sequence is not in A+", details={"step": index})
        try:
            after = contract(moved, step.position)
        except InputValidationError as e:
            raise CertificateError(f"Step {index}: {e.message}", details={"step": index})
        if after != step.after:
            raise CertificateError(
                f"Step {index}: contraction does not reproduce the recorded sequence",
                details={"step": index, "computed": list(after), "recorded": list(step.after)},
            )
        current = after
    if current != BASE_SEQUENCE:
        raise CertificateError("Certificate does not end at (1, 1, 1)", details={"end": list(current)})
    return True


def enumerate_aplus(n: int) -> list[Seq]:
    """Dihedral classes of A+ sequences of length ``n``, by expansion from (1, 1, 1)."""
    if n < 3:
        raise InputValidationError("Enumeration length must be at least 3", details={"length": n})
    level: set[Seq] = {BASE_SEQUENCE}
    for length in range(3, n):
        level = {dihedral_normal_form(expand(s, g)) for s in level for g in range(length)}
        logger.debug("Length %d: %d classes", length + 1, len(level))
    return sorted(level)
