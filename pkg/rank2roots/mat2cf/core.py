from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

from rank2roots.shared.exceptions import NotUnimodularError

Vector = Tuple[int, int]


@dataclass(frozen=True, slots=True)
class Mat2:
    """Exact 2x2 integer matrix, row-major [[a, b], [c, d]]."""

    a: int
    b: int
    c: int
    d: int

    @staticmethod
    def identity() -> "Mat2":
        return Mat2(1, 0, 0, 1)

    @staticmethod
    def from_rows(rows: Tuple[Tuple[int, int], Tuple[int, int]]) -> "Mat2":
        (a, b), (c, d) = rows
        return Mat2(a, b, c, d)

    def to_rows(self) -> list[list[int]]:
        return [[self.a, self.b], [self.c, self.d]]

    @property
    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    @property
    def trace(self) -> int:
        return self.a + self.d

    @property
    def first_column(self) -> Vector:
        return self.a, self.c

    @property
    def second_column(self) -> Vector:
        return self.b, self.d

    def __matmul__(self, other: "Mat2") -> "Mat2":
        return Mat2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def __neg__(self) -> "Mat2":
        return Mat2(-self.a, -self.b, -self.c, -self.d)

    def __pow__(self, k: int) -> "Mat2":
        if k < 0:
            return self.inverse() ** (-k)
        result, base = Mat2.identity(), self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def apply(self, v: Vector) -> Vector:
        """Multiply a column vector."""
        x, y = v
        return self.a * x + self.b * y, self.c * x + self.d * y

    def inverse(self) -> "Mat2":
        """Inverse over the integers; only unimodular matrices have one."""
        det = self.det
        if det not in (1, -1):
            raise NotUnimodularError(det)
        return Mat2(det * self.d, -det * self.b, -det * self.c, det * self.a)

    def is_identity(self) -> bool:
        return self == Mat2.identity()

    def is_minus_identity(self) -> bool:
        return self == -Mat2.identity()

    def __str__(self) -> str:
        return f"[[{self.a},{self.b}],[{self.c},{self.d}]]"


@dataclass(frozen=True, slots=True)
class OrderResult:
    """Multiplicative order of a unimodular matrix; ``order`` is None when infinite."""

    order: int | None

    @staticmethod
    def finite(k: int) -> "OrderResult":
        return OrderResult(order=k)

    @staticmethod
    def infinite() -> "OrderResult":
        return OrderResult(order=None)

    @property
    def is_finite(self) -> bool:
        return self.order is not None

    def __str__(self) -> str:
        return f"Finite({self.order})" if self.is_finite else "Infinite"


@dataclass(frozen=True, slots=True)
class ConvergentPair:
    """Numerator A and denominator B of a continued-fraction convergent."""

    A: int
    B: int
