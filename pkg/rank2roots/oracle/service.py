"""
Brute-force checkers that share no code with the reduction in ``decide``:
definition-level A+ filtering, the universal-cover criterion and a plain
breadth-first search of the Weyl groupoid.
"""

from __future__ import annotations

import logging
from collections import deque
from typing import Iterator, Optional

from rank2roots.aplus.models import Seq
from rank2roots.aplus.service import dihedral_normal_form, is_in_Aplus
from rank2roots.mat2cf.core import Mat2, OrderResult
from rank2roots.mat2cf.service import eta, eta_product, matrix_order
from rank2roots.oracle.models import BFSReport, GroupoidState
from rank2roots.scheme.models import LABELS, CartanScheme2
from rank2roots.scheme.service import reducible_walk_closes, reflection, rho
from rank2roots.shared.config import get_settings
from rank2roots.shared.exceptions import InputValidationError

logger = logging.getLogger(__name__)

NAIVE_ORDER_CAP = 13


def naive_order(m: Mat2, cap: int = NAIVE_ORDER_CAP) -> OrderResult:
    """Order by repeated multiplication; Infinite when no power up to ``cap`` is the identity."""
    power = m
    for k in range(1, cap + 1):
        if power.is_identity():
            return OrderResult.finite(k)
        power = power @ m
    return OrderResult.infinite()


def decide_bruteforce(scheme: CartanScheme2) -> bool:
    """Finite iff the universal cover's half sequence lies in A+ (or the reducible walk closes)."""
    s = scheme.sequence
    if 0 in s:
        return all(c == 0 for c in s) and reducible_walk_closes(scheme)
    if not scheme.is_cycle:
        objects = len(s) - 1
        s = s + s[1:objects][::-1]
    order = matrix_order(eta_product(reversed(s)))
    if not order.is_finite:
        return False
    half = tuple(s[k % len(s)] for k in range(order.order * len(s) // 2))
    return is_in_Aplus(half)


def _positive_compositions(n: int) -> Iterator[Seq]:
    """Length-n positive sequences of sum 3(n-2) whose proper prefixes keep a nonnegative first column."""
    total = 3 * (n - 2)

    def extend(prefix: list[int], product: Mat2, remaining: int) -> Iterator[Seq]:
        slots = n - len(prefix)
        if slots == 1:
            yield (*prefix, remaining)
            return
        for c in range(1, remaining - slots + 2):
            nxt = product @ eta(c)
            if nxt.a < 0 or nxt.c < 0:
                continue
            prefix.append(c)
            yield from extend(prefix, nxt, remaining - c)
            prefix.pop()

    yield from extend([], Mat2.identity(), total)


def enumerate_aplus_bruteforce(n: int) -> list[Seq]:
    """A+ classes of length ``n`` by filtering every candidate with the right entry sum."""
    limit = get_settings().BRUTEFORCE_MAX_LENGTH
    if not 3 <= n <= limit:
        raise InputValidationError(
            f"Brute-force enumeration supports lengths 3 to {limit}, got {n}",
            details={"length": n},
        )
    classes = {dihedral_normal_form(s) for s in _positive_compositions(n) if is_in_Aplus(s)}
    logger.debug("Brute force found %d classes of length %d", len(classes), n)
    return sorted(classes)


def groupoid_bfs(scheme: CartanScheme2, cap: Optional[int] = None) -> BFSReport:
    """Enumerate Hom(a_0, -) as (object, matrix) pairs generated by the reflections."""
    if cap is None:
        cap = get_settings().bfs_cap(scheme.objects)
    if cap < 1:
        raise InputValidationError(f"BFS budget must be positive, got {cap}", details={"cap": cap})

    start = GroupoidState(object=0, matrix=Mat2.identity(), length=0)
    seen: dict[tuple[int, Mat2], GroupoidState] = {(start.object, start.matrix): start}
    owner: dict[Mat2, int] = {start.matrix: start.object}
    c3_holds = True
    queue = deque([start])
    while queue:
        state = queue.popleft()
        for label in LABELS:
            target = rho(scheme, label, state.object)
            matrix = reflection(scheme, label, state.object) @ state.matrix
            key = (target, matrix)
            if key in seen:
                continue
            if owner.setdefault(matrix, target) != target:
                c3_holds = False
            seen[key] = GroupoidState(object=target, matrix=matrix, length=state.length + 1)
            if len(seen) > cap:
                logger.info("Groupoid BFS on %s exceeded the budget of %d states", scheme, cap)
                return BFSReport(cap=cap, budget_exceeded=True, total_states=len(seen), c3_holds=c3_holds)
            queue.append(seen[key])

    endomorphisms = [s for s in seen.values() if s.object == 0]
    even = sum(1 for s in endomorphisms if s.matrix.det == 1)
    return BFSReport(
        cap=cap,
        budget_exceeded=False,
        total_states=len(seen),
        end_size=len(endomorphisms),
        c3_holds=c3_holds,
        end_even=even,
        end_odd=len(endomorphisms) - even,
        max_length=max(s.length for s in seen.values()),
    )
