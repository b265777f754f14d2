"""Veronese parametrization and osculating frames over a prime field.

Points live on the affine chart ``x_0 = 1`` of ``P^n``; a point is the tuple
of its ``n`` affine coordinates.  The ``m``-th osculating frame at a point is
the matrix whose rows are all partial derivatives of order ``<= m`` of the
Veronese map, evaluated at that point.  Its row span is the osculating space
``T^m_p``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .combinatorics import (
    MultiIndex,
    binomial,
    derive_monomial,
    monomial_basis,
    multiindices_up_to,
)
from .linalg import DEFAULT_PRIME, PrimeField, rank_mod_p

__all__ = [
    "OsculatingFrame",
    "ambient_dim",
    "random_points",
    "veronese_point",
    "osculating_frame",
    "stacked_frames",
    "osculating_span_dim",
]


def ambient_dim(n: int, d: int) -> int:
    """Projective dimension ``r`` of the span of ``V_{n,d}``."""
    return binomial(d + n, n) - 1


@lru_cache(maxsize=None)
def _column_index(n: int, d: int) -> dict[tuple[int, ...], int]:
    # affine exponent (degree <= d) -> column of the matching degree-d monomial
    return {mono.affine: k for k, mono in enumerate(monomial_basis(n, d))}


@lru_cache(maxsize=None)
def _derivative_table(n: int, d: int, m: int) -> tuple[np.ndarray, np.ndarray]:
    """Coefficients and source columns for all derivatives of order <= m.

    Entry ``(row, col)`` of the frame equals ``coeff[row, col] * v[src[row, col]]``
    where ``v`` is the Veronese image of the point.  Vanishing derivatives
    have ``coeff == 0`` and ``src == 0``.
    """
    alphas = multiindices_up_to(n, m)
    basis = monomial_basis(n, d)
    cols = _column_index(n, d)
    coeff = np.zeros((len(alphas), len(basis)), dtype=object)
    src = np.zeros((len(alphas), len(basis)), dtype=np.intp)
    for i, alpha in enumerate(alphas):
        for k, mono in enumerate(basis):
            res = derive_monomial(mono.affine, alpha)
            if res is None:
                continue
            coeff[i, k] = res[0]
            src[i, k] = cols[res[1]]
    coeff.setflags(write=False)
    src.setflags(write=False)
    return coeff, src


@lru_cache(maxsize=64)
def _reduced_coefficients(n: int, d: int, m: int, p: int) -> np.ndarray:
    coeff, _ = _derivative_table(n, d, m)
    out = np.vectorize(lambda c: int(c) % p, otypes=[np.int64])(coeff)
    out.setflags(write=False)
    return out


def _field(field) -> PrimeField:
    return field if isinstance(field, PrimeField) else PrimeField(field)


def veronese_point(n: int, d: int, point: Sequence[int], field=DEFAULT_PRIME) -> np.ndarray:
    """Image of an affine point under the degree-``d`` Veronese map.

    The entry for monomial ``x^beta`` is ``prod t_j^{beta_j}`` with ``x_0 = 1``.
    """
    f = _field(field)
    t = [int(c) % f.p for c in point]
    if len(t) != n:
        raise ValueError(f"point has {len(t)} coordinates, expected {n}")
    powers = [[pow(tj, e, f.p) for e in range(d + 1)] for tj in t]
    out = np.empty(binomial(d + n, n), dtype=np.int64)
    for k, mono in enumerate(monomial_basis(n, d)):
        val = 1
        for j, e in enumerate(mono.affine):
            val = val * powers[j][e] % f.p
        out[k] = val
    return out


@dataclass(frozen=True)
class OsculatingFrame:
    point: tuple[int, ...]
    order: int
    rows: np.ndarray

    @property
    def multiindices(self) -> list[MultiIndex]:
        return multiindices_up_to(len(self.point), self.order)


def _frame_rows(n: int, d: int, point, m: int, f: PrimeField) -> np.ndarray:
    v = veronese_point(n, d, point, f)
    _, src = _derivative_table(n, d, m)
    coeff = _reduced_coefficients(n, d, m, f.p)
    return coeff * v[src] % f.p


def osculating_frame(
    n: int, d: int, point: Sequence[int], m: int, field=DEFAULT_PRIME
) -> OsculatingFrame:
    """Derivative rows of order ``<= m`` at ``point``, one per multi-index.

    ``m > d`` is allowed; derivatives of order above ``d`` are zero rows.
    """
    if m < 0:
        raise ValueError("order must be non-negative")
    f = _field(field)
    pt = tuple(int(c) % f.p for c in point)
    return OsculatingFrame(pt, m, _frame_rows(n, d, pt, m, f))


def stacked_frames(
    n: int, d: int, points: Sequence[Sequence[int]], orders: Sequence[int], field=DEFAULT_PRIME
) -> np.ndarray:
    """Vertically stacked osculating frames; negative orders contribute nothing."""
    if len(points) != len(orders):
        raise ValueError("need one order per point")
    f = _field(field)
    blocks = [_frame_rows(n, d, pt, m, f) for pt, m in zip(points, orders) if m >= 0]
    if not blocks:
        return np.zeros((0, binomial(d + n, n)), dtype=np.int64)
    return np.vstack(blocks)


def osculating_span_dim(
    n: int,
    d: int,
    points: Sequence[Sequence[int]],
    orders: Sequence[int],
    field=DEFAULT_PRIME,
) -> int:
    """Projective dimension of the span of ``T^{m_i}_{p_i}`` over all points."""
    if len(points) < 1:
        raise ValueError("need at least one point")
    f = _field(field)
    return rank_mod_p(stacked_frames(n, d, points, orders, f), f) - 1


def random_points(
    k: int, n: int, rng: np.random.Generator, field=DEFAULT_PRIME
) -> list[tuple[int, ...]]:
    """``k`` pairwise distinct uniform points of ``F_p^n``."""
    f = _field(field)
    seen: set[tuple[int, ...]] = set()
    out: list[tuple[int, ...]] = []
    while len(out) < k:
        pt = tuple(int(c) for c in f.random_elements(rng, n))
        if pt in seen:
            continue
        seen.add(pt)
        out.append(pt)
    return out
