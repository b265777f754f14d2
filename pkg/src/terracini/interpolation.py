"""Plane linear systems ``L_d(mu_1, ..., mu_k)`` with general base points.

A point of multiplicity ``mu`` imposes vanishing of every derivative of order
``< mu``, i.e. the rows of the osculating frame of order ``mu - 1``.  The
dimension of the system is therefore read off the rank of stacked frames.
Dimensions are projective: the empty system has dimension ``-1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .combinatorics import binomial
from .linalg import DEFAULT_PRIME, PrimeField, rank_mod_p
from .osculating import random_points, stacked_frames

__all__ = [
    "LinearSystemSpec",
    "InterpReport",
    "virtual_dim",
    "conditions_matrix",
    "actual_dim",
    "speciality",
    "cremona_reduce",
]


@dataclass(frozen=True)
class LinearSystemSpec:
    """Degree and base-point multiplicities, stored non-increasing.

    Negative entries are allowed only as the output of a Cremona step; such
    systems are ``flagged`` and cannot be evaluated.
    """

    d: int
    multiplicities: tuple[int, ...] = ()

    def __post_init__(self):
        mults = tuple(sorted((int(x) for x in self.multiplicities), reverse=True))
        object.__setattr__(self, "multiplicities", mults)

    @classmethod
    def uniform(cls, d: int, mu: int, k: int) -> LinearSystemSpec:
        return cls(d, (mu,) * k)

    @property
    def flagged(self) -> bool:
        return self.d < 0 or any(x < 0 for x in self.multiplicities)

    def trimmed(self) -> LinearSystemSpec:
        """The same system with zero multiplicities dropped."""
        return LinearSystemSpec(self.d, tuple(x for x in self.multiplicities if x != 0))

    def __str__(self):
        mults = ",".join(str(x) for x in self.multiplicities)
        return f"L_{self.d}({mults})"


@dataclass(frozen=True)
class InterpReport:
    spec: LinearSystemSpec
    virtual: int
    expected: int
    actual: int
    prime: int
    seed: int
    trials: int

    @property
    def speciality(self) -> int:
        return self.actual - self.expected

    @property
    def special(self) -> bool:
        return self.speciality > 0

    def to_dict(self) -> dict:
        return {
            "d": self.spec.d,
            "multiplicities": list(self.spec.multiplicities),
            "virtual": self.virtual,
            "expected": self.expected,
            "actual": self.actual,
            "speciality": self.speciality,
            "special": self.special,
            "prime": self.prime,
            "seed": self.seed,
            "trials": self.trials,
        }


def virtual_dim(spec: LinearSystemSpec) -> int:
    """``d(d+3)/2 - sum mu_i(mu_i+1)/2``; may be negative."""
    return spec.d * (spec.d + 3) // 2 - sum(x * (x + 1) // 2 for x in spec.multiplicities)


def conditions_matrix(
    spec: LinearSystemSpec, points: Sequence[Sequence[int]], field=DEFAULT_PRIME
) -> np.ndarray:
    """Rows of derivatives of order ``< mu_i`` at each point, columns in monomial order.

    This is exactly the stack of osculating frames of orders ``mu_i - 1``.
    """
    if spec.flagged:
        raise ValueError(f"{spec} has negative entries")
    if len(points) != len(spec.multiplicities):
        raise ValueError("need one point per multiplicity")
    orders = [x - 1 for x in spec.multiplicities]
    return stacked_frames(2, spec.d, points, orders, field)


def actual_dim(
    spec: LinearSystemSpec,
    *,
    prime: int = DEFAULT_PRIME,
    seed: int = 0,
    trials: int = 3,
) -> int:
    """Dimension of the system at random general points.

    A random rank can only fall short of the generic one, so the smallest
    dimension seen across ``trials`` samples is returned.
    """
    if spec.flagged:
        raise ValueError(f"{spec} has negative entries; reduce it differently")
    if trials < 1:
        raise ValueError("trials must be at least 1")
    f = PrimeField(prime)
    rng = np.random.default_rng(seed)
    n_monomials = binomial(spec.d + 2, 2)
    best_rank = 0
    for _ in range(trials):
        pts = random_points(len(spec.multiplicities), 2, rng, f)
        rank = rank_mod_p(conditions_matrix(spec, pts, f), f)
        best_rank = max(best_rank, rank)
        if best_rank == n_monomials:
            break
    return n_monomials - 1 - best_rank


def speciality(
    spec: LinearSystemSpec,
    *,
    prime: int = DEFAULT_PRIME,
    seed: int = 0,
    trials: int = 3,
) -> InterpReport:
    virtual = virtual_dim(spec)
    actual = actual_dim(spec, prime=prime, seed=seed, trials=trials)
    return InterpReport(spec, virtual, max(virtual, -1), actual, prime, seed, trials)


def cremona_reduce(spec: LinearSystemSpec) -> LinearSystemSpec:
    """One quadratic transformation based at the three largest multiplicities.

    ``d' = 2d - mu_a - mu_b - mu_c`` and each used multiplicity becomes
    ``d`` minus the other two.  When ``d' >= d`` the system is already
    reduced and is returned unchanged.  Negative results are kept; check
    ``.flagged`` on the output.
    """
    mults = list(spec.multiplicities) + [0] * max(0, 3 - len(spec.multiplicities))
    a, b, c = mults[:3]
    excess = a + b + c - spec.d
    if excess <= 0:
        return spec
    rest = mults[3:]
    return LinearSystemSpec(spec.d - excess, (a - excess, b - excess, c - excess, *rest))
