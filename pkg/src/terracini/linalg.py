"""Exact rank computations.

Ranks over a prime field run on dense ``int64`` numpy arrays.  Keeping the
modulus below ``2**31`` means a product of two reduced entries stays below
``2**62``, so a single multiply-then-reduce never overflows.

Random specializations only ever lose rank, so a rank computed at random
points over ``F_p`` is a lower bound for the generic rank over the complex
numbers.  Callers that need the generic value take the maximum over several
independent samples.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "DEFAULT_PRIME",
    "ALTERNATE_PRIME",
    "MatrixSizeError",
    "PrimeField",
    "is_prime",
    "rank_mod_p",
    "rank_exact_integer",
]

DEFAULT_PRIME = 2_147_483_647
ALTERNATE_PRIME = 1_000_000_007

_MIN_MODULUS = 2**20
_MAX_MODULUS = 2**31
_BAREISS_MAX_ENTRIES = 2500


class MatrixSizeError(ValueError):
    """Raised when a matrix is too large for fraction-free integer elimination."""


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for every ``n < 3.3 * 10**24``."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class PrimeField:
    """The field ``F_p`` for a word-size prime ``2**20 < p < 2**31``."""

    def __init__(self, p: int = DEFAULT_PRIME):
        p = int(p)
        if not _MIN_MODULUS < p < _MAX_MODULUS:
            raise ValueError(
                f"modulus {p} outside the supported range (2**20, 2**31)"
            )
        if not is_prime(p):
            raise ValueError(f"modulus {p} is not prime")
        self.p = p

    def __repr__(self):
        return f"PrimeField({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(self.p)

    def random_elements(self, rng: np.random.Generator, size, nonzero: bool = False):
        low = 1 if nonzero else 0
        return rng.integers(low, self.p, size=size, dtype=np.int64)


def _modulus(field) -> int:
    # bare ints skip the lower bound: it guards random sampling, not arithmetic
    if isinstance(field, PrimeField):
        return field.p
    p = int(field)
    if not (p < _MAX_MODULUS and is_prime(p)):
        raise ValueError(f"modulus {p} must be a prime below 2**31")
    return p


def rank_mod_p(matrix, field: PrimeField | int = DEFAULT_PRIME) -> int:
    """Rank of ``matrix`` over ``F_p``; ``field`` is a PrimeField or a prime.

    Plain Gaussian elimination; the pivot in each column is the first
    nonzero entry at or below the current row.  The input is not modified.
    """
    p = _modulus(field)
    a = np.array(matrix, dtype=np.int64, copy=True)
    if a.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    a %= p
    n_rows, n_cols = a.shape
    rank = 0
    for col in range(n_cols):
        if rank == n_rows:
            break
        nz = np.flatnonzero(a[rank:, col])
        if nz.size == 0:
            continue
        pivot = rank + int(nz[0])
        if pivot != rank:
            a[[rank, pivot]] = a[[pivot, rank]]
        inv = pow(int(a[rank, col]), -1, p)
        a[rank, col:] = a[rank, col:] * inv % p
        below = rank + 1 + np.flatnonzero(a[rank + 1 :, col])
        if below.size:
            factors = a[below, col]
            update = factors[:, None] * a[rank, col:][None, :] % p
            a[below, col:] = (a[below, col:] - update) % p
        rank += 1
    return rank


def rank_exact_integer(matrix) -> int:
    """Rank over the rationals by fraction-free (Bareiss) elimination.

    Used as a certification oracle on small integer matrices; refuses
    matrices with more than 2500 entries because intermediate values grow
    with the size of the minors.
    """
    rows = [[int(v) for v in row] for row in np.asarray(matrix, dtype=object).tolist()]
    n_rows = len(rows)
    n_cols = len(rows[0]) if n_rows else 0
    if n_rows * n_cols > _BAREISS_MAX_ENTRIES:
        raise MatrixSizeError(
            f"{n_rows}x{n_cols} matrix exceeds {_BAREISS_MAX_ENTRIES} entries"
        )
    prev = 1
    rank = 0
    for col in range(n_cols):
        if rank == n_rows:
            break
        pivot = next((r for r in range(rank, n_rows) if rows[r][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        piv = rows[rank][col]
        for r in range(rank + 1, n_rows):
            lead = rows[r][col]
            row = rows[r]
            top = rows[rank]
            for c in range(col, n_cols):
                # exact division is guaranteed by Sylvester's identity
                row[c] = (piv * row[c] - lead * top[c]) // prev
        prev = piv
        rank += 1
    return rank
