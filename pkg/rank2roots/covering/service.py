"""
Coverings of rank-two Cartan schemes: k-fold and universal covers of cycles,
the double cover of a chain, quotient detection and transport of roots.
"""

from __future__ import annotations

import logging
from enum import Enum

from rank2roots.covering.exceptions import CoveringConditionError
from rank2roots.covering.models import ChainQuotient, CoveringKind, CoveringRelation, QuotientReport
from rank2roots.mat2cf.core import Mat2, OrderResult
from rank2roots.mat2cf.service import eta_product, matrix_order
from rank2roots.roots.exceptions import RootSystemMismatchError
from rank2roots.roots.models import RootSystem2
from rank2roots.scheme.models import LABELS, CartanScheme2
from rank2roots.scheme.service import (
    cartan_matrix,
    char_seq,
    cycle_from_char_seq,
    is_centrally_symmetric,
    rho,
)
from rank2roots.shared.exceptions import (
    InfiniteOrderError,
    InputValidationError,
    InternalInvariantError,
    SchemeKindError,
)

logger = logging.getLogger(__name__)


class Direction(str, Enum):
    UP = "up"
    DOWN = "down"


def _require_cycle(scheme: CartanScheme2) -> None:
    if not scheme.is_cycle:
        raise SchemeKindError(expected="cycle", actual=scheme.kind.value)


def loop_matrix(scheme: CartanScheme2) -> Mat2:
    """eta(c_n) ... eta(c_1); conjugate by tau to the generator of End(a_1)."""
    _require_cycle(scheme)
    return eta_product(reversed(scheme.sequence))


def end_order(scheme: CartanScheme2) -> OrderResult:
    return matrix_order(loop_matrix(scheme))


def k_fold_cover(scheme: CartanScheme2, k: int) -> CoveringRelation:
    _require_cycle(scheme)
    if k < 1:
        raise InputValidationError(f"Covering degree must be positive, got {k}", details={"k": k})
    n = scheme.objects
    cover = cycle_from_char_seq(scheme.sequence * k)
    return CoveringRelation(
        kind=CoveringKind.IDENTITY if k == 1 else CoveringKind.K_FOLD,
        base=scheme,
        cover=cover,
        fold=k,
        object_map=tuple(x % n for x in range(n * k)),
    )


def _fold_onto_chain(x: int, objects: int) -> int:
    if x == 0:
        return 0
    if x <= objects:
        return x - 1
    return 2 * objects - x


def chain_double_cover(scheme: CartanScheme2) -> CoveringRelation:
    """The cycle (s_0, ..., s_N, s_{N-1}, ..., s_1) folded onto the chain with spine s."""
    if scheme.is_cycle:
        raise SchemeKindError(expected="chain", actual=scheme.kind.value)
    s = scheme.sequence
    objects = scheme.objects
    cover = cycle_from_char_seq(s + s[1:objects][::-1])
    return CoveringRelation(
        kind=CoveringKind.CHAIN_DOUBLE,
        base=scheme,
        cover=cover,
        fold=2,
        object_map=tuple(_fold_onto_chain(x, objects) for x in range(2 * objects)),
    )


def universal_cover(scheme: CartanScheme2) -> CoveringRelation:
    """The h-fold cover, h = |End(a)|; its loop matrix is the identity."""
    order = end_order(scheme)
    if not order.is_finite:
        raise InfiniteOrderError(
            f"Loop matrix of {scheme} has infinite order, no finite universal cover exists",
            details={"scheme": str(scheme), "loop_matrix": loop_matrix(scheme).to_rows()},
        )
    relation = k_fold_cover(scheme, order.order)
    if not loop_matrix(relation.cover).is_identity():
        logger.error("Universal cover of %s is not simply connected", scheme)
        raise InternalInvariantError("Universal cover has a nontrivial loop", details={"scheme": str(scheme)})
    logger.debug("Universal cover of %s has %d objects", scheme, relation.cover.objects)
    return relation.model_copy(update={"kind": CoveringKind.UNIVERSAL})


def detect_quotients(scheme: CartanScheme2) -> QuotientReport:
    """Chain quotients at every reference pair, and the half quotient of a doubled sequence."""
    _require_cycle(scheme)
    n = scheme.objects
    report = QuotientReport(scheme=scheme)
    for label in LABELS:
        for a in range(n):
            s = char_seq(scheme, label, a)
            if all(s[k] == s[n - k] for k in range(1, n // 2)):
                report.chain_quotients.append(
                    ChainQuotient(label=label, object=a, char_seq=s, spine=s[: n // 2 + 1])
                )
    if n % 4 == 0 and is_centrally_symmetric(scheme):
        half = scheme.sequence[: n // 2]
        if half[: n // 4] != half[n // 4 :]:
            report.half_quotient = cycle_from_char_seq(half)
    return report


def cover_satisfies_c3(rel: CoveringRelation) -> bool:
    """Whether morphisms of the cover with equal matrices share their target.

    A k-fold cover of a cycle with loop order h satisfies (C3) iff k divides h,
    or the loop has infinite order. The chain double cover always does.
    """
    if rel.kind == CoveringKind.CHAIN_DOUBLE:
        return True
    order = end_order(rel.base)
    return not order.is_finite or order.order % rel.fold == 0


def check_covering(rel: CoveringRelation) -> list[str]:
    """Violations of Cartan agreement, pi rho' = rho pi, and constant fibre size."""
    problems = []
    if len(rel.object_map) != rel.cover.objects:
        return [f"object map has {len(rel.object_map)} entries for {rel.cover.objects} cover objects"]
    for x in range(rel.cover.objects):
        image = rel.object_map[x]
        if not 0 <= image < rel.base.objects:
            problems.append(f"cover object {x} maps outside the base")
            continue
        if cartan_matrix(rel.cover, x) != cartan_matrix(rel.base, image):
            problems.append(f"Cartan matrices differ at cover object {x}")
        for label in LABELS:
            if rel.object_map[rho(rel.cover, label, x)] != rho(rel.base, label, image):
                problems.append(f"rho_{label} does not commute with pi at cover object {x}")
    sizes = {len(rel.fibre(b)) for b in range(rel.base.objects)}
    if sizes != {rel.fold}:
        problems.append(f"fibre sizes {sorted(sizes)} differ from the degree {rel.fold}")
    return problems


def transport_roots(rel: CoveringRelation, roots: RootSystem2, direction: Direction) -> RootSystem2:
    """Copy roots up along pi, or intersect them down over each fibre.

    Lifting is only sound when (C3) holds on the cover; otherwise CoveringConditionError.
    """
    if direction == Direction.UP:
        if roots.scheme != rel.base:
            raise RootSystemMismatchError(expected=str(rel.base), actual=str(roots.scheme))
        if not cover_satisfies_c3(rel):
            raise CoveringConditionError(str(rel.cover), rel.fold, str(end_order(rel.base)))
        return RootSystem2.of(rel.cover, [roots.root_set(image) for image in rel.object_map])
    if roots.scheme != rel.cover:
        raise RootSystemMismatchError(expected=str(rel.cover), actual=str(roots.scheme))
    sets = []
    for b in range(rel.base.objects):
        fibre = rel.fibre(b)
        common = roots.root_set(fibre[0])
        for x in fibre[1:]:
            common &= roots.root_set(x)
        sets.append(common)
    return RootSystem2.of(rel.base, sets)
