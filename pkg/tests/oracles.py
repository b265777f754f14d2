"""Reference computations that share no code with the package.

Derivatives come from sympy's symbolic differentiation of the Veronese map,
ranks from exact elimination over the rationals.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

import sympy


def rank_fraction(rows) -> int:
    """Rank over Q by textbook elimination on Fractions."""
    m = [[Fraction(int(v)) for v in row] for row in rows]
    rank = 0
    n_cols = len(m[0]) if m else 0
    for c in range(n_cols):
        piv = next((r for r in range(rank, len(m)) if m[r][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for r in range(len(m)):
            if r != rank and m[r][c] != 0:
                f = m[r][c] / m[rank][c]
                m[r] = [a - f * b for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank


def rank_mod_p_python(rows, p: int) -> int:
    """Rank over F_p with plain Python integers."""
    m = [[int(v) % p for v in row] for row in rows]
    rank = 0
    n_cols = len(m[0]) if m else 0
    for c in range(n_cols):
        piv = next((r for r in range(rank, len(m)) if m[r][c]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][c], -1, p)
        for r in range(len(m)):
            if r != rank and m[r][c]:
                f = m[r][c] * inv % p
                m[r] = [(a - f * b) % p for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank


def _symbols(n):
    return sympy.symbols(f"t0:{n}")


def veronese_map(n: int, d: int):
    """Affine Veronese map as a list of sympy monomials (sorted by sympy, order irrelevant)."""
    t = _symbols(n)
    monos = []
    for deg in range(d + 1):
        for combo in itertools.combinations_with_replacement(range(n), deg):
            expr = sympy.Integer(1)
            for j in combo:
                expr *= t[j]
            monos.append(expr)
    return t, monos


def derivative_rows(n: int, d: int, point, order: int, exact_order: bool = False):
    """All derivatives of order <= ``order`` (or == when ``exact_order``) at ``point``.

    Returns a dict keyed by the sorted direction multiset.
    """
    t, monos = veronese_map(n, d)
    subs = dict(zip(t, point))
    out = {}
    orders = [order] if exact_order else range(order + 1)
    for k in orders:
        for combo in itertools.combinations_with_replacement(range(n), k):
            row = []
            for mono in monos:
                expr = mono
                for j in combo:
                    expr = sympy.diff(expr, t[j])
                row.append(int(expr.subs(subs)))
            out[combo] = row
    return out


def span_rank(n: int, d: int, points, orders) -> int:
    rows = []
    for pt, m in zip(points, orders):
        rows.extend(derivative_rows(n, d, pt, m).values())
    return rank_fraction(rows)


def terracini_rank(n: int, d: int, orders, rng: random.Random, box: int = 50) -> int:
    """Rank of the join tangent span at random integer points and weights."""
    pts = set()
    while len(pts) < len(orders):
        pts.add(tuple(rng.randint(-box, box) for _ in range(n)))
    rows = []
    for pt, m in zip(sorted(pts), orders):
        rows.extend(derivative_rows(n, d, pt, m).values())
        top = derivative_rows(n, d, pt, m + 1, exact_order=True)
        weights = {combo: rng.randint(1, box) for combo in
                   itertools.combinations_with_replacement(range(n), m)}
        for j in range(n):
            acc = [0] * len(rows[0])
            for combo, w in weights.items():
                key = tuple(sorted(combo + (j,)))
                acc = [a + w * b for a, b in zip(acc, top[key])]
            rows.append(acc)
    return rank_fraction(rows)


def plane_system_dim(d: int, mults, rng: random.Random, box: int = 50) -> int:
    """dim L_d(mults) at random integer points, via vanishing derivatives."""
    pts = set()
    while len(pts) < len(mults):
        pts.add((rng.randint(-box, box), rng.randint(-box, box)))
    rows = []
    for pt, mu in zip(sorted(pts), mults):
        if mu > 0:
            rows.extend(derivative_rows(2, d, pt, mu - 1).values())
    n_monomials = (d + 1) * (d + 2) // 2
    rank = rank_fraction(rows) if rows else 0
    return n_monomials - 1 - rank
