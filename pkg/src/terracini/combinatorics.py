"""Multi-indices, monomial bases and symbolic differentiation of monomials.

Every ordering here is graded-lexicographic: sequences are grouped by total
degree (ascending) and, inside a grade, sorted lexicographically in
descending order, so ``x0`` comes before ``x1`` and ``(1, 0)`` before
``(0, 1)``.  Matrix columns and rows downstream inherit this order.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb

__all__ = [
    "MultiIndex",
    "HomogeneousMonomial",
    "binomial",
    "multiindices_of_order",
    "multiindices_up_to",
    "monomial_basis",
    "derive_monomial",
]


@dataclass(frozen=True, order=True)
class MultiIndex:
    """Exponent vector of a partial derivative in ``n`` affine parameters."""

    exponents: tuple[int, ...]

    def __post_init__(self):
        if len(self.exponents) < 1:
            raise ValueError("a multi-index needs at least one parameter")
        if any(a < 0 for a in self.exponents):
            raise ValueError(f"negative exponent in {self.exponents}")

    @property
    def n(self) -> int:
        return len(self.exponents)

    @property
    def order(self) -> int:
        return sum(self.exponents)

    def __add__(self, other: MultiIndex) -> MultiIndex:
        if other.n != self.n:
            raise ValueError("multi-indices of different lengths")
        return MultiIndex(tuple(a + b for a, b in zip(self.exponents, other.exponents)))

    @classmethod
    def unit(cls, n: int, j: int) -> MultiIndex:
        """The multi-index ``e_j`` (a single derivative in direction ``j``)."""
        return cls(tuple(1 if k == j else 0 for k in range(n)))


@dataclass(frozen=True)
class HomogeneousMonomial:
    """Exponents of ``x_0^{b_0} ... x_n^{b_n}``."""

    exponents: tuple[int, ...]

    def __post_init__(self):
        if any(b < 0 for b in self.exponents):
            raise ValueError(f"negative exponent in {self.exponents}")

    @property
    def degree(self) -> int:
        return sum(self.exponents)

    @property
    def affine(self) -> tuple[int, ...]:
        """Exponents on the chart ``x_0 = 1``."""
        return self.exponents[1:]


def binomial(a: int, b: int) -> int:
    """Binomial coefficient, zero when ``b > a``."""
    if a < 0 or b < 0:
        raise ValueError("binomial arguments must be non-negative")
    return comb(a, b)


def _compositions(total: int, parts: int) -> list[tuple[int, ...]]:
    # Weak compositions in descending lexicographic order.
    if parts == 1:
        return [(total,)]
    out = []
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            out.append((first,) + rest)
    return out


@lru_cache(maxsize=None)
def _compositions_cached(total: int, parts: int) -> tuple[tuple[int, ...], ...]:
    return tuple(_compositions(total, parts))


def multiindices_of_order(n: int, m: int) -> list[MultiIndex]:
    """All multi-indices of length ``n`` with order exactly ``m``."""
    if n < 1:
        raise ValueError("n must be positive")
    if m < 0:
        return []
    return [MultiIndex(e) for e in _compositions_cached(m, n)]


def multiindices_up_to(n: int, m: int) -> list[MultiIndex]:
    """All multi-indices of length ``n`` and order at most ``m``.

    The zero multi-index comes first; the result has ``binomial(m + n, n)``
    entries.
    """
    if n < 1:
        raise ValueError("n must be positive")
    out: list[MultiIndex] = []
    for k in range(m + 1):
        out.extend(multiindices_of_order(n, k))
    return out


def monomial_basis(n: int, d: int) -> list[HomogeneousMonomial]:
    """Degree-``d`` monomials in ``n + 1`` variables, ``x_0^d`` first."""
    if n < 1:
        raise ValueError("n must be positive")
    if d < 0:
        raise ValueError("d must be non-negative")
    return [HomogeneousMonomial(e) for e in _compositions_cached(d, n + 1)]


def derive_monomial(
    beta: tuple[int, ...], alpha: MultiIndex | tuple[int, ...]
) -> tuple[int, tuple[int, ...]] | None:
    """Apply ``d^alpha`` to the affine monomial ``t^beta``.

    Returns ``(coefficient, beta - alpha)`` where the coefficient is the
    product of falling factorials, or ``None`` when the derivative vanishes.

    >>> derive_monomial((1, 3), (0, 2))
    (6, (1, 1))
    """
    a = alpha.exponents if isinstance(alpha, MultiIndex) else tuple(alpha)
    if len(a) != len(beta):
        raise ValueError("multi-index and monomial have different lengths")
    coeff = 1
    for b_j, a_j in zip(beta, a):
        if a_j > b_j:
            return None
        for k in range(a_j):
            coeff *= b_j - k
    return coeff, tuple(b - x for b, x in zip(beta, a))
