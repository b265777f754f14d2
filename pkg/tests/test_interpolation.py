import random

import numpy as np
import pytest

from terracini.interpolation import (
    LinearSystemSpec,
    actual_dim,
    conditions_matrix,
    cremona_reduce,
    speciality,
    virtual_dim,
)
from terracini.linalg import ALTERNATE_PRIME, DEFAULT_PRIME
from terracini.osculating import random_points, stacked_frames

from oracles import plane_system_dim

L = LinearSystemSpec


@pytest.mark.parametrize(
    "spec,expected",
    [(L(2, (2, 2)), -1), (L(4, (2,) * 5), -1), (L(3, (3, 3)), -3), (L(5, (2,) * 5), 5)],
)
def test_virtual_dim(spec, expected):
    assert virtual_dim(spec) == expected


@pytest.mark.parametrize(
    "spec,expected",
    [(L(2, (2, 2)), 0), (L(4, (2,) * 5), 0), (L(3, (1, 1, 1)), 6), (L(3, (3, 3)), 0),
     (L(5, (2,) * 5), 5), (L(4, (3, 3)), 3)],
)
def test_actual_dim_against_symbolic_oracle(spec, expected):
    ref = min(plane_system_dim(spec.d, spec.multiplicities, random.Random(s)) for s in range(3))
    assert ref == expected
    assert actual_dim(spec, seed=8) == expected


@pytest.mark.parametrize(
    "spec,virtual,actual,e",
    [
        (L(2, (2, 2)), -1, 0, 1),
        (L(3, (3, 3)), -3, 0, 1),
        (L(4, (2,) * 5), -1, 0, 1),
        (L(5, (2,) * 5), 5, 5, 0),
    ],
)
def test_speciality_table(spec, virtual, actual, e):
    rep = speciality(spec, seed=1)
    assert (rep.virtual, rep.actual, rep.speciality) == (virtual, actual, e)
    assert rep.expected == max(virtual, -1)
    assert rep.special == (e > 0)


def test_spec_is_canonical():
    assert L(3, (1, 3, 2)).multiplicities == (3, 2, 1)
    assert L(3, (1, 3, 2)) == L(3, (3, 1, 2))
    assert str(L(4, (2, 2))) == "L_4(2,2)"


def test_empty_and_overdetermined_systems():
    assert actual_dim(L(3, ())) == 9
    assert actual_dim(L(2, (3,))) == -1
    assert actual_dim(L(0, ())) == 0


def test_conditions_matrix_is_stacked_frames():
    spec = L(6, (3, 2, 2, 1))
    pts = random_points(4, 2, np.random.default_rng(2))
    a = conditions_matrix(spec, pts)
    b = stacked_frames(2, 6, pts, [2, 1, 1, 0])
    assert np.array_equal(a, b)


def test_flagged_systems_are_refused():
    flagged = L(0, (0, 0, -3))
    assert flagged.flagged
    with pytest.raises(ValueError):
        actual_dim(flagged)


@pytest.mark.parametrize(
    "spec,expected,flagged",
    [
        (L(4, (2,) * 5), L(2, (2, 2, 0, 0, 0)), False),
        (L(3, (3, 3, 0)), L(0, (0, 0, -3)), True),
        (L(5, (2, 2, 2)), L(4, (1, 1, 1)), False),
    ],
)
def test_cremona_examples(spec, expected, flagged):
    out = cremona_reduce(spec)
    assert out == expected
    assert out.flagged == flagged


def test_cremona_fixed_point_and_padding():
    spec = L(6, (2, 2, 2))
    assert cremona_reduce(spec) is spec
    assert cremona_reduce(L(3, (2, 2))) == L(2, (1, 1, -1))


@pytest.mark.parametrize("seed", range(100))
def test_cremona_preserves_dimension(seed):
    rng = random.Random(seed)
    d = rng.randint(1, 12)
    k = rng.randint(3, 9)
    mults = tuple(rng.randint(0, max(1, d // 2 + 1)) for _ in range(k))
    spec = L(d, mults)
    out = cremona_reduce(spec)
    if out.flagged:
        return
    assert actual_dim(spec, seed=seed) == actual_dim(out, seed=seed + 10_000)


def test_cremona_sample_is_not_vacuous():
    hits = 0
    for seed in range(100):
        rng = random.Random(seed)
        d = rng.randint(1, 12)
        k = rng.randint(3, 9)
        spec = L(d, tuple(rng.randint(0, max(1, d // 2 + 1)) for _ in range(k)))
        out = cremona_reduce(spec)
        hits += (out != spec) and not out.flagged
    assert hits >= 30


@pytest.mark.parametrize("mu", range(1, 5))
def test_many_uniform_points_are_nonspecial(mu):
    for k in range(10, 15):
        for d in range(1, 13):
            assert speciality(L.uniform(d, mu, k), seed=d * 100 + k).speciality == 0


@pytest.mark.parametrize("spec", [L(2, (2, 2)), L(4, (2,) * 5), L(3, (3, 3)), L(5, (2,) * 5),
                                  L(7, (3,) * 6), L(6, (2,) * 7)])
def test_actual_dim_stable_across_seeds_and_primes(spec):
    dims = {actual_dim(spec, seed=s, prime=p) for s in (1, 2, 3)
            for p in (DEFAULT_PRIME, ALTERNATE_PRIME)}
    assert len(dims) == 1


def test_report_dict():
    out = speciality(L(3, (3, 3)), seed=0).to_dict()
    assert out["speciality"] == 1 and out["special"] is True
    assert out["multiplicities"] == [3, 3]
