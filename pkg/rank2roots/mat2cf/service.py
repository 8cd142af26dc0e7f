"""
Matrix calculus over SL(2, Z) and GL(2, Z) used by every other module.

Products of eta matrices encode continued fractions with all partial
numerators equal to -1; their orders decide finiteness of root systems.
"""

from __future__ import annotations

import logging
from typing import Iterable, Sequence

from rank2roots.mat2cf.core import ConvergentPair, Mat2, OrderResult
from rank2roots.shared.exceptions import InputValidationError, NotUnimodularError

logger = logging.getLogger(__name__)

# det 1 traces with finite order; +/-identity are handled separately
_SL2_ORDER_BY_TRACE = {-1: 3, 0: 4, 1: 6}


def eta(i: int) -> Mat2:
    return Mat2(i, -1, 1, 0)


def eta_inverse(i: int) -> Mat2:
    return Mat2(0, 1, -1, i)


def tau() -> Mat2:
    return Mat2(0, 1, 1, 0)


def eta_product(seq: Iterable[int]) -> Mat2:
    """eta(c1) eta(c2) ... eta(cn), left to right; identity for an empty sequence."""
    result = Mat2.identity()
    for c in seq:
        # right multiplication by eta(c) in closed form
        result = Mat2(result.a * c + result.b, -result.a, result.c * c + result.d, -result.c)
    return result


def matrix_order(m: Mat2) -> OrderResult:
    """Order of a unimodular matrix by the trace/determinant classification."""
    det = m.det
    if det == 1:
        if m.is_identity():
            return OrderResult.finite(1)
        if m.is_minus_identity():
            return OrderResult.finite(2)
        k = _SL2_ORDER_BY_TRACE.get(m.trace)
        return OrderResult.finite(k) if k is not None else OrderResult.infinite()
    if det == -1:
        # x^2 = tr(x) x + 1, so x^2 = 1 iff the trace vanishes
        return OrderResult.finite(2) if m.trace == 0 else OrderResult.infinite()
    raise NotUnimodularError(det)


def convergents(b0: int, coeffs: Sequence[tuple[int, int]], n: int) -> list[ConvergentPair]:
    """
    Convergents (A_0, B_0) ... (A_n, B_n) of b0 + a1/(b1 + a2/(b2 + ...)).

    ``coeffs`` holds the pairs (a_v, b_v) for v = 1, 2, ...
    """
    if n < 0 or n > len(coeffs):
        raise InputValidationError(
            "Convergent count must lie between 0 and the number of coefficients",
            details={"n": n, "available": len(coeffs)},
        )
    prev_a, prev_b = 1, 0
    cur_a, cur_b = b0, 1
    pairs = [ConvergentPair(cur_a, cur_b)]
    for a_v, b_v in coeffs[:n]:
        prev_a, cur_a = cur_a, b_v * cur_a + a_v * prev_a
        prev_b, cur_b = cur_b, b_v * cur_b + a_v * prev_b
        pairs.append(ConvergentPair(cur_a, cur_b))
    return pairs


def convergents_negative(b0: int, bs: Sequence[int], n: int) -> list[ConvergentPair]:
    """Convergents with every partial numerator equal to -1."""
    return convergents(b0, [(-1, b) for b in bs], n)
