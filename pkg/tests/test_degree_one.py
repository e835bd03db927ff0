from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings

from polyalg.arrangement import LineArrangement
from polyalg.degree_one import (
    DegreeOneSpace,
    PairingError,
    af_check,
    decompose_2d,
    euler_verdier_deg1,
    gram_matrix,
    hr_equality_check,
    naive_line_kernel,
    pair_top,
    restriction_rank,
    symmetric_line_measure,
)
from polyalg.exact_scalar import radical_sqrt
from polyalg.linalg import canonicalize
from polyalg.measures import WeightedDirections
from polyalg.polytope_geom import box, cube, minkowski_sum, simplex, surface_class
from polyalg.rng import substream
from polyalg.sym_algebra import SymAlgebra, cube_element, ell_symmetric
from strategies import arrangement_from, polytopes, seeds


def unit(n):
    return SymAlgebra(LineArrangement.coordinate_axes(n)).unit()


def chi2(p, q):
    return minkowski_sum(p, -q).volume() - p.volume() - q.volume()


def test_square_and_triangle_self_pairing():
    for p in (cube(2), simplex(2)):
        assert pair_top(surface_class(p), surface_class(p), unit(2)) == 2


def test_naive_kernel_discrepancy_on_triangle():
    s = surface_class(simplex(2))
    assert naive_line_kernel(s, s) == Fraction(3, 2)
    assert pair_top(s, s, unit(2)) == 2


def test_cube_with_one_line_matches_symmetric_route():
    alg = SymAlgebra(LineArrangement.coordinate_axes(3))
    x3 = alg.x(canonicalize([[0, 0, 1]], 3))
    s = surface_class(cube(3))
    assert pair_top(s, s, x3) == 2
    c = cube_element(alg)
    assert alg.top_evaluate(c * c * x3) == 2


def test_boxes_match_symmetric_route():
    alg = SymAlgebra(LineArrangement.coordinate_axes(3))
    p, q, r = box([1, 2, 3]), box([2, 1, 1]), box([1, 1, 5])
    ep, eq, er = (ell_symmetric(b, alg) for b in (p, q, r))
    assert pair_top(surface_class(p), surface_class(q), er) == alg.top_evaluate(ep * eq * er)


def test_degree_mismatch_rejected():
    s = surface_class(cube(3))
    with pytest.raises(PairingError):
        pair_top(s, s, unit(3))


def test_euler_verdier_is_antipode_negation():
    mu = surface_class(simplex(2))
    assert euler_verdier_deg1(mu) == -mu.antipode()
    assert euler_verdier_deg1(euler_verdier_deg1(mu)) == mu


def test_decompose_2d_difference():
    mu = surface_class(simplex(2)) - surface_class(cube(2))
    a, b = decompose_2d(mu)
    assert surface_class(a) - surface_class(b) == mu


def test_degree_one_space_round_trip():
    arr = LineArrangement.from_vectors([[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]])
    space = DegreeOneSpace.of(arr)
    assert space.dim == 2 * 4 - 3
    coords = [Fraction(i + 1, 3) for i in range(space.dim)]
    assert space.coordinates(space.element(coords)) == coords
    with pytest.raises(PairingError):
        space.coordinates(WeightedDirections.from_pairs([((1, 0, 0), 1)], 3))


def test_axes_plane_gram():
    arr = LineArrangement.coordinate_axes(2)
    alg = SymAlgebra(arr)
    g = gram_matrix([symmetric_line_measure(arr, i) for i in range(2)], alg.unit())
    assert g == [[0, -1], [-1, 0]]


def test_cube_hr_check_and_restriction_rank():
    arr = LineArrangement.coordinate_axes(3)
    alg = SymAlgebra(arr)
    res = hr_equality_check(alg, surface_class(cube(3)), [cube_element(alg)])
    assert res["status"] == "pass"
    assert res["signature"] == [2, 0, 0] and res["primitive_dim"] == 2
    assert restriction_rank(DegreeOneSpace.of(arr)) == 3


def test_af_check_on_boxes():
    out = af_check(box([1, 2, 3]), cube(3), [cube(3)])
    assert out["status"] == "pass" and out["holds"]


@settings(max_examples=25)
@given(polytopes(dims=(2,)), polytopes(dims=(2,)))
def test_plane_pairing_is_difference_body_volume(p, q):
    assert pair_top(surface_class(p), surface_class(q), unit(2)) == chi2(p, q)


@settings(max_examples=10)
@given(seeds)
def test_degree_one_gram_matches_symmetric_gram(seed):
    arr = arrangement_from(seed, 3, 4)
    alg = SymAlgebra(arr)
    rng = substream(seed, "c")
    c = alg.from_line_weights([int(rng.integers(1, 4)) for _ in arr.lines])
    g1 = gram_matrix([symmetric_line_measure(arr, i) for i in range(len(arr.lines))], c)
    gs = alg.hr_gram_sym(1, [c])
    pos = alg.lattice.index(1)
    order = [pos[alg.line(i)] for i in range(len(arr.lines))]
    norms = [sum(x * x for x in l) for l in arr.lines]
    for i in range(len(norms)):
        for j in range(len(norms)):
            # q_deg1 = |xi_L| |xi_M| q_sym
            assert g1[i][j] == radical_sqrt(norms[i] * norms[j]) * gs[order[i]][order[j]]
