"""
Decision procedure for finite root systems of connected rank-two Cartan schemes.

Chains are replaced by their double cover and cycles that are not centrally
symmetric by their double; a centrally symmetric cycle is then reduced on its
half sequence by contracting 1s until a base case settles the verdict.
"""

from __future__ import annotations

import logging
from typing import Optional

from rank2roots.aplus.models import Seq
from rank2roots.aplus.service import contract, is_in_Aplus
from rank2roots.covering.service import (
    Direction,
    chain_double_cover,
    end_order,
    k_fold_cover,
    transport_roots,
    universal_cover,
)
from rank2roots.decide.exceptions import NoFiniteRootSystemError
from rank2roots.decide.models import (
    TERMINAL_STEPS,
    AllGeTwoStep,
    BaseFourStep,
    CertificateStep,
    ChainToCycleStep,
    ContractStep,
    Decision,
    ExtremalPair,
    NonCSDoubleStep,
    SmallCaseOracleStep,
    Stats,
    TripleOnesStep,
    ZeroCaseStep,
)
from rank2roots.roots.models import RootSystem2
from rank2roots.roots.service import build_root_system, reducible_root_system
from rank2roots.scheme.models import CartanScheme2, SchemeKind
from rank2roots.scheme.service import (
    chain_from_spine,
    cycle_from_char_seq,
    is_centrally_symmetric,
    off_diagonal_entries,
    reducible_walk_closes,
    validate,
)
from rank2roots.shared.exceptions import (
    CertificateError,
    InfiniteOrderError,
    InputValidationError,
    InternalInvariantError,
)

logger = logging.getLogger(__name__)

# possible values of |R+| / (|A|/2) on a cycle
ALLOWED_M = frozenset({1, 2, 3, 4, 6})


def _require_valid(scheme: CartanScheme2) -> None:
    report = validate(scheme)
    if not report.valid:
        axioms = sorted({v.axiom for v in report.violations})
        raise InputValidationError(
            f"{scheme} violates axiom(s) {', '.join(axioms)}",
            details={"violations": [v.model_dump() for v in report.violations]},
        )


def _small_case(half: Seq) -> SmallCaseOracleStep:
    order = end_order(cycle_from_char_seq(half + half))
    if not order.is_finite:
        return SmallCaseOracleStep(half=half, h=None, finite=False)
    extension = tuple(half[k % len(half)] for k in range(order.order * len(half)))
    return SmallCaseOracleStep(half=half, h=order.order, finite=is_in_Aplus(extension))


def _terminal_step(half: Seq) -> Optional[CertificateStep]:
    """The base case settling ``half``, or None when a contraction applies."""
    m = len(half)
    if m == 1:
        return _small_case(half)
    if all(c >= 2 for c in half):
        return AllGeTwoStep(half=half)
    p = half.index(1)
    c1, c3 = half[(p - 1) % m], half[(p + 1) % m]
    if m == 2:
        if half == (1, 1):
            return _small_case(half)
        return BaseFourStep(half=half, c1=c1, finite=c1 in (2, 3))
    if c1 == 1 or c3 == 1:
        return TripleOnesStep(half=half, finite=half == (1, 1, 1))
    return None


def _reduce(scheme: CartanScheme2, steps: list[CertificateStep]) -> bool:
    current = scheme
    if not current.is_cycle:
        cover = chain_double_cover(current).cover
        steps.append(ChainToCycleStep(before=current, after=cover))
        current = cover
    if not is_centrally_symmetric(current):
        doubled = k_fold_cover(current, 2).cover
        steps.append(NonCSDoubleStep(before=current, after=doubled))
        current = doubled

    half = current.sequence[: current.objects // 2]
    while True:
        terminal = _terminal_step(half)
        if terminal is not None:
            steps.append(terminal)
            return terminal.finite
        p = half.index(1)
        after = contract(half, p)
        steps.append(ContractStep(position=p, before=half, after=after))
        logger.debug("Contracted %s at %d to %s", half, p, after)
        half = after


def decide(scheme: CartanScheme2) -> Decision:
    """Decide whether ``scheme`` admits a finite root system, with a replayable certificate."""
    _require_valid(scheme)
    steps: list[CertificateStep] = []
    if 0 in scheme.sequence:
        all_zero = all(c == 0 for c in scheme.sequence)
        closes = reducible_walk_closes(scheme)
        steps.append(
            ZeroCaseStep(
                objects=scheme.objects,
                all_zero=all_zero,
                walk_closes=closes,
                finite=all_zero and closes,
            )
        )
        finite, irreducible = all_zero and closes, False
    else:
        finite, irreducible = _reduce(scheme, steps), True

    decision = Decision(scheme=scheme, finite=finite, irreducible=irreducible, certificate=steps)
    if finite:
        decision = decision.model_copy(update={"stats": stats(scheme, decision)})
    logger.info("Decided %s: %s after %d steps", scheme, decision.verdict, len(steps))
    return decision


def entry_bound(kind: SchemeKind, objects: int) -> int:
    """Largest possible negated Cartan entry of a finite scheme with ``objects`` objects."""
    return objects + 1 if kind == SchemeKind.CYCLE else 2 * objects + 1


def _invariant_failure(message: str, scheme: CartanScheme2, **details) -> InternalInvariantError:
    logger.error("%s for %s: %s", message, scheme, details)
    return InternalInvariantError(message, details={"scheme": str(scheme), **details})


def stats(scheme: CartanScheme2, decision: Decision) -> Stats:
    """q, h and |R+| of a finite scheme, cross-checked against the loop matrix order and the bounds."""
    if not decision.finite:
        raise InputValidationError(f"Statistics need a finite verdict, {scheme} is not finite")
    n = scheme.objects
    q = -sum(c12 + c21 for c12, c21 in off_diagonal_entries(scheme))
    denominator = 6 * n - q
    if denominator <= 0 or 24 % denominator or (12 * n) % denominator:
        raise _invariant_failure("h (6|A| - q) = 24 has no integral solution", scheme, q=q)
    h = 24 // denominator
    positive_roots = 12 * n // denominator

    if scheme.is_cycle:
        order = end_order(scheme)
        expected_h = order.order
        m = h
    else:
        order = end_order(chain_double_cover(scheme).cover)
        expected_h = 2 * order.order if order.is_finite else None
        m = h // 2
    if expected_h != h:
        raise _invariant_failure("h disagrees with the loop matrix order", scheme, h=h, loop_order=str(order))
    if m not in ALLOWED_M or positive_roots * (2 if scheme.is_cycle else 1) != m * n:
        raise _invariant_failure("positive root count outside the allowed classes", scheme, m=m)

    bound = entry_bound(scheme.kind, n)
    max_entry = max(scheme.sequence)
    if max_entry > bound:
        raise _invariant_failure("Cartan entry exceeds the bound", scheme, max_entry=max_entry, bound=bound)
    return Stats(objects=n, q=q, h=h, positive_roots=positive_roots, m=m, max_entry=max_entry, entry_bound=bound)


def extremal_scheme(n: int) -> ExtremalPair:
    """Cycle on 2n objects and chain on n objects whose largest entry 2n+1 meets the bound."""
    if n < 1:
        raise InputValidationError(f"n must be positive, got {n}", details={"n": n})
    if n == 1:
        return ExtremalPair(n=1, cycle=cycle_from_char_seq((1, 3)), chain=chain_from_spine((1, 3)), base_case=True)
    twos = (2,) * (n - 2)
    spine = (3, *twos, 1, 2 * n + 1)
    cycle = (*spine, 1, *twos)
    return ExtremalPair(n=n, cycle=cycle_from_char_seq(cycle), chain=chain_from_spine(spine))


def _current_half(current: CartanScheme2, half: Optional[Seq], index: int) -> Seq:
    if half is not None:
        return half
    if not current.is_cycle or not is_centrally_symmetric(current):
        raise CertificateError(
            f"Step {index}: reduction needs a centrally symmetric cycle, got {current}",
            details={"step": index},
        )
    return current.sequence[: current.objects // 2]


def verify_certificate(scheme: CartanScheme2, decision: Decision) -> bool:
    """Replay ``decision`` against ``scheme`` step by step; raises CertificateError on any mismatch."""
    if decision.scheme != scheme:
        raise CertificateError(
            "Decision belongs to a different scheme",
            details={"expected": str(scheme), "recorded": str(decision.scheme)},
        )
    steps = decision.certificate
    if not steps or not isinstance(steps[-1], TERMINAL_STEPS):
        raise CertificateError("Certificate does not end in a base case")
    has_zero = 0 in scheme.sequence
    if has_zero != isinstance(steps[0], ZeroCaseStep):
        raise CertificateError("Zero entries are decided by the zero case and only by it")

    current, half = scheme, None
    for index, step in enumerate(steps):
        if isinstance(step, TERMINAL_STEPS) and index != len(steps) - 1:
            raise CertificateError(f"Step {index}: base case before the end of the certificate")
        if isinstance(step, ZeroCaseStep):
            closes = reducible_walk_closes(scheme)
            all_zero = all(c == 0 for c in scheme.sequence)
            expected = ZeroCaseStep(
                objects=scheme.objects, all_zero=all_zero, walk_closes=closes, finite=all_zero and closes
            )
            if step != expected:
                raise CertificateError("Zero case does not match the scheme", details={"step": index})
        elif isinstance(step, ChainToCycleStep):
            if current.is_cycle or step.before != current or step.after != chain_double_cover(current).cover:
                raise CertificateError(f"Step {index}: chain double cover mismatch", details={"step": index})
            current = step.after
        elif isinstance(step, NonCSDoubleStep):
            if (
                not current.is_cycle
                or is_centrally_symmetric(current)
                or step.before != current
                or step.after != k_fold_cover(current, 2).cover
            ):
                raise CertificateError(f"Step {index}: doubling mismatch", details={"step": index})
            current = step.after
        elif isinstance(step, ContractStep):
            half = _current_half(current, half, index)
            m = len(half)
            if step.before != half or m < 3:
                raise CertificateError(f"Step {index}: contraction starts from the wrong sequence")
            p = step.position % m
            if half[p] != 1 or half[(p - 1) % m] < 2 or half[(p + 1) % m] < 2:
                raise CertificateError(f"Step {index}: position {p} is not a 1 between entries >= 2")
            if contract(half, p) != step.after:
                raise CertificateError(f"Step {index}: contraction result mismatch", details={"step": index})
            half = step.after
        else:
            half = _current_half(current, half, index)
            if step != _terminal_step(half):
                raise CertificateError(
                    f"Step {index}: base case does not match {half}",
                    details={"step": index, "half": list(half)},
                )

    if steps[-1].finite != decision.finite:
        raise CertificateError("Recorded verdict differs from the certificate")
    if decision.irreducible == has_zero:
        raise CertificateError("Irreducibility flag does not match the scheme")
    if decision.finite and decision.stats != stats(scheme, decision):
        raise CertificateError("Recorded statistics differ from the recomputed ones")
    return True


def realize_root_system(scheme: CartanScheme2) -> RootSystem2:
    """
    Explicit finite root system of ``scheme``.

    Built on the universal cover from its A+ half sequence and transported down;
    chains go through their double cover first.
    """
    _require_valid(scheme)
    if 0 in scheme.sequence:
        if all(c == 0 for c in scheme.sequence) and reducible_walk_closes(scheme):
            return reducible_root_system(scheme)
        raise NoFiniteRootSystemError(str(scheme))
    if not scheme.is_cycle:
        relation = chain_double_cover(scheme)
        return transport_roots(relation, realize_root_system(relation.cover), Direction.DOWN)

    try:
        relation = universal_cover(scheme)
    except InfiniteOrderError as e:
        raise NoFiniteRootSystemError(str(scheme), details={"scheme": str(scheme), "reason": e.message}) from e
    cover = relation.cover.sequence
    d = cover[: len(cover) // 2]
    if not is_in_Aplus(d) or d + d != cover:
        raise NoFiniteRootSystemError(str(scheme), details={"scheme": str(scheme), "half": list(d)})
    built = build_root_system(d)
    logger.debug("Realized %s from %s on %d cover objects", scheme, d, len(cover))
    return transport_roots(relation, built, Direction.DOWN)
