from __future__ import annotations

import math

import pytest
from hypothesis import given, strategies as st

from polyalg.arrangement import (
    ArrangementError,
    LineArrangement,
    build_lattice,
    dowling_wilson_profile,
    random_arrangement,
)
from polyalg.rng import substream
from strategies import arrangement_from, seeds


@pytest.mark.parametrize(
    "vectors, sizes",
    [
        ([[1, 0, 0], [0, 1, 0], [0, 0, 1]], (1, 3, 3, 1)),
        ([[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]], (1, 4, 6, 1)),
        # three coplanar lines plus one: the plane counts once
        ([[1, 0, 0], [0, 1, 0], [1, 1, 0], [0, 0, 1]], (1, 4, 4, 1)),
    ],
)
def test_lattice_sizes(vectors, sizes):
    assert build_lattice(LineArrangement.from_vectors(vectors)).sizes == sizes


def test_axes_lattice_is_boolean():
    for n in range(2, 6):
        lat = build_lattice(LineArrangement.coordinate_axes(n))
        assert lat.sizes == tuple(math.comb(n, k) for k in range(n + 1))


def test_invalid_arrangements():
    with pytest.raises(ArrangementError):
        LineArrangement.from_vectors([[1, 0], [2, 0]])
    with pytest.raises(ArrangementError):
        LineArrangement.from_vectors([[1, 0, 0], [0, 1, 0]])
    with pytest.raises(ArrangementError):
        LineArrangement.from_vectors([[0, 0]])


def test_json_round_trip():
    arr = LineArrangement.from_vectors([[1, 2], [3, -1], [0, 1]])
    assert LineArrangement.from_json(arr.to_json()) == arr


def test_witnesses_span_their_subspace():
    lat = build_lattice(LineArrangement.from_vectors([[1, 0, 0], [0, 1, 0], [1, 1, 0], [0, 1, 1]]))
    for k, level in enumerate(lat.levels):
        for s in level:
            w = lat.witnesses[s]
            assert len(w) == k
            assert all(s.contains(lat.arrangement.lines[i]) for i in w)


def test_random_arrangement_is_seeded():
    a = random_arrangement(substream(3, "x"), 3, 5)
    b = random_arrangement(substream(3, "x"), 3, 5)
    assert a == b and len(a) == 5


@given(seeds, st.sampled_from([3, 4]), st.integers(0, 3))
def test_dowling_wilson_profile(seed, n, extra):
    arr = arrangement_from(seed, n, n + extra)
    lat = build_lattice(arr)
    prof = dowling_wilson_profile(lat)
    assert prof["holds"]
    assert lat.sizes[0] == lat.sizes[n] == 1
    assert lat.sizes[1] == len(arr.lines)
