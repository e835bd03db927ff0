"""Shared hypothesis strategies; heavy objects are built from drawn seeds."""
from __future__ import annotations

from fractions import Fraction

from hypothesis import strategies as st

from polyalg.arrangement import random_arrangement
from polyalg.exact_scalar import RadicalScalar
from polyalg.polytope_geom import random_polytope
from polyalg.rng import substream

RADICANDS = (1, 2, 3, 5, 6, 7, 10)

rationals = st.fractions(min_value=-8, max_value=8, max_denominator=9)
nonzero_rationals = rationals.filter(lambda q: q != 0)


@st.composite
def radicals(draw, max_terms: int = 3):
    ds = draw(st.lists(st.sampled_from(RADICANDS), max_size=max_terms, unique=True))
    return RadicalScalar({d: draw(rationals) for d in ds})


seeds = st.integers(min_value=0, max_value=2**32 - 1)


def arrangement_from(seed: int, n: int, count: int, bound: int = 3):
    return random_arrangement(substream(seed, "test/arrangement"), n, count, bound)


@st.composite
def arrangements(draw, dims=(2, 3), extra=(0, 3)):
    n = draw(st.sampled_from(dims))
    count = n + draw(st.integers(*extra))
    return arrangement_from(draw(seeds), n, count)


@st.composite
def polytopes(draw, dims=(2,), m=None):
    n = draw(st.sampled_from(dims))
    return random_polytope(substream(draw(seeds), "test/polytope"), n, m)


def positive_weights(rng, count: int) -> list[Fraction]:
    return [Fraction(int(rng.integers(1, 6)), int(rng.integers(1, 4))) for _ in range(count)]
