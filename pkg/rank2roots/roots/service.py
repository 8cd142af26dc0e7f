"""
Finite rank-two root systems: explicit construction from an A+ sequence,
axiom verification and extraction of the A+ sequence back from the roots.
"""

from __future__ import annotations

import logging
from typing import Sequence

from rank2roots.aplus.models import Seq
from rank2roots.aplus.service import is_in_Aplus
from rank2roots.mat2cf.core import Mat2
from rank2roots.mat2cf.service import eta, tau
from rank2roots.roots.exceptions import AxiomViolationError, ReducibleRootSystemError
from rank2roots.roots.models import AxiomReport, Root, RootSystem2
from rank2roots.scheme.models import LABELS, CartanScheme2, Violation
from rank2roots.scheme.service import alternating_walk, cycle_from_char_seq, reflection, rho
from rank2roots.shared.exceptions import NotInAplusError

logger = logging.getLogger(__name__)

SIMPLE_ROOTS: tuple[Root, Root] = ((1, 0), (0, 1))


def _with_negatives(vectors: list[Root]) -> set[Root]:
    return set(vectors) | {(-x, -y) for x, y in vectors}


def build_root_system(d: Sequence[int]) -> RootSystem2:
    """Simply connected root system on the cycle d+d; every object has len(d) positive roots."""
    d = tuple(d)
    if not is_in_Aplus(d):
        raise NotInAplusError(d)
    n = len(d)
    scheme = cycle_from_char_seq(d + d)
    sets = []
    for x in range(2 * n):
        twist = tau() if x % 2 else Mat2.identity()
        product = Mat2.identity()
        vectors = []
        for step in range(n):
            vectors.append((twist @ product).apply((1, 0)))
            product = product @ eta(d[(x + step) % n])
        sets.append(_with_negatives(vectors))
    logger.debug("Built root system for %s on %d objects", d, 2 * n)
    return RootSystem2.of(scheme, sets)


def reducible_root_system(scheme: CartanScheme2) -> RootSystem2:
    """{+-alpha_1, +-alpha_2} at every object."""
    return RootSystem2.of(scheme, [_with_negatives(list(SIMPLE_ROOTS)) for _ in range(scheme.objects)])


def _apply(m: Mat2, roots: set[Root]) -> set[Root]:
    return {m.apply(r) for r in roots}


def verify_axioms(rs: RootSystem2) -> AxiomReport:
    """Check (R1) to (R4), rebuilding every reflection from the Cartan matrices."""
    report = AxiomReport()
    scheme = rs.scheme
    for a in range(scheme.objects):
        roots = rs.root_set(a)
        mixed = sorted(r for r in roots if not ((r[0] >= 0 and r[1] >= 0) or (r[0] <= 0 and r[1] <= 0)))
        if mixed or (0, 0) in roots:
            report.violations.append(Violation(axiom="R1", object=a, message=f"roots of mixed sign or zero: {mixed}"))
        if {(-x, -y) for x, y in roots} != roots:
            report.violations.append(Violation(axiom="R1", object=a, message="root set is not closed under negation"))
        axis = {r for r in roots if r[0] == 0 or r[1] == 0}
        if axis != _with_negatives(list(SIMPLE_ROOTS)):
            report.violations.append(
                Violation(axiom="R2", object=a, message=f"roots on the coordinate axes are {sorted(axis)}")
            )
        for label in LABELS:
            b = rho(scheme, label, a)
            if _apply(reflection(scheme, label, a), roots) != rs.root_set(b):
                report.violations.append(
                    Violation(axiom="R3", object=a, message=f"sigma_{label} does not map R^{a} onto R^{b}")
                )
        m = len(rs.positive_roots(a))
        current = a
        for _ in range(m):
            current = rho(scheme, 1, rho(scheme, 2, current))
        if current != a:
            report.violations.append(
                Violation(axiom="R4", object=a, message=f"(rho_1 rho_2)^{m} does not fix the object")
            )
    if report.violations:
        logger.info("Root system on %s fails %s", scheme, sorted(report.axioms_failed()))
    return report


def positive_root_count(rs: RootSystem2) -> int:
    counts = {len(rs.positive_roots(a)) for a in range(rs.scheme.objects)}
    if len(counts) != 1:
        raise AxiomViolationError(
            "Objects carry different numbers of positive roots",
            details={"counts": sorted(counts)},
        )
    return counts.pop()


def phi(rs: RootSystem2, label: int, a: int) -> Seq:
    """A+ sequence read along the alternating reflection walk from (label, a)."""
    if 0 in rs.scheme.sequence:
        raise ReducibleRootSystemError(str(rs.scheme))
    return alternating_walk(rs.scheme, label, a, positive_root_count(rs))
