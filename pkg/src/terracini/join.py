"""Dimensions of higher order joins of Veronese varieties.

A join ``J(m_0, ..., m_h, V_{n,d})`` is the closure of the union of the spans
of osculating spaces ``T^{m_i}_{p_i}`` at ``h + 1`` general points.  Its
tangent space at a general point is spanned by

* every derivative ``p_i^I`` with ``|I| <= m_i``, and
* for each point and each direction ``j``, the single vector
  ``sum_{|I| = m_i} lambda_i^I p_i^{I + e_j}`` with general weights.

The rank of that matrix, minus one, is the dimension of the join.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

from .combinatorics import MultiIndex, binomial, multiindices_of_order, multiindices_up_to
from .linalg import DEFAULT_PRIME, PrimeField, rank_mod_p
from .osculating import _frame_rows, ambient_dim, random_points, stacked_frames

__all__ = [
    "DEFAULT_TRIALS",
    "JoinSpec",
    "TerraciniFrame",
    "DimensionReport",
    "LemmaIIIResult",
    "expected_join_dim",
    "terracini_frame",
    "join_dim",
    "lemma_iii_bound",
]

DEFAULT_TRIALS = 3


@dataclass(frozen=True)
class JoinSpec:
    """``J(m_0, ..., m_h, V_{n,d})``; equal orders give ``Sec_h(T(m, V_{n,d}))``."""

    n: int
    d: int
    orders: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "orders", tuple(int(m) for m in self.orders))
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if self.d < 1:
            raise ValueError("d must be at least 1")
        if not self.orders:
            raise ValueError("orders must be non-empty")
        if any(m < 0 for m in self.orders):
            raise ValueError("orders must be non-negative")

    @classmethod
    def secant(cls, d: int, m: int, h: int, n: int = 2) -> JoinSpec:
        """``Sec_h(T(m, V_{n,d}))``: ``h + 1`` copies of order ``m``."""
        if h < 0:
            raise ValueError("h must be non-negative")
        return cls(n, d, (m,) * (h + 1))

    @property
    def h(self) -> int:
        return len(self.orders) - 1

    @property
    def r(self) -> int:
        return ambient_dim(self.n, self.d)

    @property
    def equal_orders(self) -> bool:
        return len(set(self.orders)) == 1

    def parameter_count(self) -> int:
        """``(h+1) n + sum C(m_i + n, n) - 1``, the uncapped expected dimension."""
        return (self.h + 1) * self.n + sum(binomial(m + self.n, self.n) for m in self.orders) - 1


def expected_join_dim(spec: JoinSpec) -> int:
    return min(spec.parameter_count(), spec.r)


@dataclass(frozen=True)
class TerraciniFrame:
    spec: JoinSpec
    points: tuple[tuple[int, ...], ...]
    lambdas: tuple[dict[MultiIndex, int], ...]
    rows: np.ndarray


def terracini_frame(
    spec: JoinSpec,
    points: Sequence[Sequence[int]],
    rng: np.random.Generator,
    field: PrimeField | int = DEFAULT_PRIME,
) -> TerraciniFrame:
    """Tangent-space generators of the join at a general point.

    Per point ``i`` the block holds ``C(m_i + n, n)`` derivative rows followed
    by ``n`` weighted rows, one per direction.  Weights are drawn nonzero
    from ``rng``.
    """
    f = field if isinstance(field, PrimeField) else PrimeField(field)
    n, d, p = spec.n, spec.d, f.p
    if len(points) != len(spec.orders):
        raise ValueError(f"expected {len(spec.orders)} points, got {len(points)}")
    pts = tuple(tuple(int(c) % p for c in pt) for pt in points)
    if len(set(pts)) != len(pts):
        raise ValueError("points must be pairwise distinct")

    blocks = []
    lambdas = []
    for pt, m in zip(pts, spec.orders):
        # order m + 1 frame holds both the lower rows and every p^{I + e_j}
        upper = _frame_rows(n, d, pt, m + 1, f)
        index = {a: k for k, a in enumerate(multiindices_up_to(n, m + 1))}
        top = multiindices_of_order(n, m)
        weights = f.random_elements(rng, len(top), nonzero=True)
        lambdas.append({a: int(w) for a, w in zip(top, weights)})

        extra = np.zeros((n, upper.shape[1]), dtype=np.int64)
        for j in range(n):
            e_j = MultiIndex.unit(n, j)
            for alpha, w in zip(top, weights):
                extra[j] = (extra[j] + int(w) * upper[index[alpha + e_j]]) % p
        blocks.append(upper[: binomial(m + n, n)])
        blocks.append(extra)
    return TerraciniFrame(spec, pts, tuple(lambdas), np.vstack(blocks))


@dataclass(frozen=True)
class DimensionReport:
    """Computed versus expected dimension of one join, with lemma checks.

    ``span_dim`` and ``upper_span_dim`` are the dimensions of the spans of the
    osculating spaces of orders ``m_i`` and ``m_i + 1`` at the same points.
    ``lemma_v_equality`` is ``None`` when its hypotheses do not hold.
    """

    spec: JoinSpec
    expdim: int
    dim: int
    defect: int
    span_dim: int
    upper_span_dim: int
    containment: bool
    lemma_iv_applies: bool
    lemma_v_equality: bool | None
    prime: int
    seed: int
    trials: int
    trial_dims: tuple[int, ...] = field(default=())

    @property
    def defective(self) -> bool:
        return self.defect > 0

    def to_dict(self) -> dict:
        out = asdict(self)
        out["spec"] = {"n": self.spec.n, "d": self.spec.d, "orders": list(self.spec.orders)}
        out["trial_dims"] = list(self.trial_dims)
        out["ambient"] = self.spec.r
        return out


def _lemma_v_hypotheses(spec: JoinSpec, span_dim: int, dim: int) -> bool:
    if spec.n != 2 or not spec.equal_orders:
        return False
    m, k = spec.orders[0], spec.h + 1
    spans_expected = span_dim == min(k * binomial(m + 2, 2) - 1, spec.r)
    return spans_expected and dim < expected_join_dim(spec)


def join_dim(
    spec: JoinSpec,
    *,
    prime: int = DEFAULT_PRIME,
    seed: int = 0,
    trials: int = DEFAULT_TRIALS,
) -> DimensionReport:
    """Dimension of the join, maximized over ``trials`` random samples.

    Each trial draws fresh points and weights.  The reported ``dim`` comes from
    the best trial; the lemma checks use that trial's point set.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    f = PrimeField(prime)
    rng = np.random.default_rng(seed)
    n, d = spec.n, spec.d
    upper_orders = [m + 1 for m in spec.orders]
    best = None
    containment = True
    trial_dims = []
    for _ in range(trials):
        pts = random_points(spec.h + 1, n, rng, f)
        frame = terracini_frame(spec, pts, rng, f)
        upper = stacked_frames(n, d, pts, upper_orders, f)
        rank_t = rank_mod_p(frame.rows, f)
        rank_u = rank_mod_p(upper, f)
        rank_l = rank_mod_p(stacked_frames(n, d, pts, spec.orders, f), f)
        containment &= rank_mod_p(np.vstack([upper, frame.rows]), f) == rank_u
        trial_dims.append(rank_t - 1)
        if best is None or (rank_t, rank_u, rank_l) > best:
            best = (rank_t, rank_u, rank_l)

    rank_t, rank_u, rank_l = best
    dim, upper_dim, span_dim = rank_t - 1, rank_u - 1, rank_l - 1
    expdim = expected_join_dim(spec)

    full_upper = sum(binomial(m + n + 1, n) for m in spec.orders) - 1
    lemma_iv = spec.r >= full_upper and upper_dim == full_upper
    lemma_v = (rank_t == rank_u) if _lemma_v_hypotheses(spec, span_dim, dim) else None

    return DimensionReport(
        spec=spec,
        expdim=expdim,
        dim=dim,
        defect=expdim - dim,
        span_dim=span_dim,
        upper_span_dim=upper_dim,
        containment=bool(containment),
        lemma_iv_applies=bool(lemma_iv),
        lemma_v_equality=lemma_v,
        prime=f.p,
        seed=seed,
        trials=trials,
        trial_dims=tuple(trial_dims),
    )


class LemmaIIIResult(NamedTuple):
    applicable: bool
    delta_span: int
    bound: int
    holds: bool


def lemma_iii_bound(
    spec: JoinSpec,
    *,
    prime: int = DEFAULT_PRIME,
    seed: int = 0,
    trials: int = DEFAULT_TRIALS,
    report: DimensionReport | None = None,
) -> LemmaIIIResult:
    """Deficiency of the osculating span and the dimension bound it forces.

    ``delta_span`` is ``sum C(m_i + n, n) - 1`` minus the actual span
    dimension, and ``bound = (h+1) n + sum C(m_i + n, n) - 1 - delta_span``.
    The bound is computed for every spec; ``applicable`` records whether
    ``r`` is at least the parameter count.
    """
    if report is None:
        report = join_dim(spec, prime=prime, seed=seed, trials=trials)
    expected_span = sum(binomial(m + spec.n, spec.n) for m in spec.orders) - 1
    delta = expected_span - report.span_dim
    bound = spec.parameter_count() - delta
    return LemmaIIIResult(
        applicable=spec.r >= spec.parameter_count(),
        delta_span=delta,
        bound=bound,
        holds=report.dim <= bound,
    )
