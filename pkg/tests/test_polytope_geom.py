from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings

from polyalg.polytope_geom import (
    GeometryError,
    Polytope,
    Zonotope,
    box,
    cube,
    hull,
    minkowski_sum,
    mixed_area,
    mixed_area_support,
    mixed_volume_inclusion_exclusion,
    mixed_volume_polarization,
    polygon_from_measure,
    projection_body,
    random_polytope,
    simplex,
    surface_class,
    volume,
    zonotope_mixed_volume,
)
from polyalg.rng import substream
from strategies import polytopes, seeds


def shoelace(p: Polytope) -> Fraction:
    c = [sum(v[i] for v in p.vertices) / len(p.vertices) for i in range(2)]
    pts = sorted(p.vertices, key=lambda v: math.atan2(float(v[1] - c[1]), float(v[0] - c[0])))
    s = sum(a[0] * b[1] - a[1] * b[0] for a, b in zip(pts, pts[1:] + pts[:1]))
    return abs(s) / 2


def test_cube_structure():
    c = cube(3)
    assert len(c.vertices) == 8 and len(c.facets) == 6
    assert c.volume() == 1
    assert all(f.weight == 1 for f in c.facets)


@pytest.mark.parametrize("d", [2, 3, 4, 5, 6])
def test_simplex_volume(d):
    assert volume(simplex(d)) == Fraction(1, math.factorial(d))


def test_interior_points_are_dropped():
    pts = [(0, 0), (2, 0), (0, 2), (2, 2), (1, 1), (1, 0)]
    p = hull([tuple(map(Fraction, v)) for v in pts], 2)
    assert len(p.vertices) == 4 and p.volume() == 4


def test_degenerate_input():
    p = hull([(0, 0, 0), (1, 0, 0), (0, 1, 0)], 3)
    assert p.degenerate and p.volume() == 0
    with pytest.raises(GeometryError):
        projection_body(p)


def test_difference_body_of_triangle():
    t = simplex(2)
    assert minkowski_sum(t, -t).volume() == 3


def test_zonotope_examples():
    e1, e2 = (1, 0), (0, 1)
    z = Zonotope.from_generators([e1, e2], 2)
    assert z.to_polytope().volume() == 4
    assert zonotope_mixed_volume([z, z]) == 4
    seg = Zonotope.from_generators([e1], 2)
    assert zonotope_mixed_volume([z, seg]) == 2
    assert projection_body(cube(3)).generators == ((0, 0, 1), (0, 1, 0), (1, 0, 0))


def test_mixed_area_square_segment():
    seg = hull([(Fraction(0), Fraction(0)), (Fraction(1), Fraction(0))], 2)
    assert mixed_volume_polarization([cube(2), seg]) == Fraction(1, 2)
    assert mixed_volume_inclusion_exclusion([cube(2), seg]) == Fraction(1, 2)


def test_json_round_trip():
    p = random_polytope(substream(1, "json"), 3)
    assert Polytope.from_json(p.to_json()) == p


@given(polytopes(dims=(2,)))
def test_hull_volume_matches_shoelace(p):
    assert p.volume() == shoelace(p)


@settings(max_examples=30)
@given(polytopes(dims=(2, 3)))
def test_surface_measure_is_centered(p):
    mu = surface_class(p)
    assert mu.centered and mu.is_nonnegative()
    # volume from the divergence theorem
    assert sum(f.offset * f.weight for f in p.facets) / p.ambient_dim == p.volume()


@settings(max_examples=30)
@given(polytopes(dims=(2,)), polytopes(dims=(2,)))
def test_mixed_area_routes_agree(p, q):
    a = mixed_area(p, q)
    assert a == mixed_area_support(p, q)
    assert a == mixed_volume_polarization([p, q])
    assert mixed_volume_polarization([p, p]) == p.volume()


@settings(max_examples=30)
@given(polytopes(dims=(2,)))
def test_polygon_from_measure_recovers_shape(p):
    q = polygon_from_measure(surface_class(p))
    assert q.volume() == p.volume()
    assert surface_class(q) == surface_class(p)


@settings(max_examples=15)
@given(seeds)
def test_minkowski_sum_support_is_additive(seed):
    rng = substream(seed, "support")
    p, q = random_polytope(rng, 3, 6), random_polytope(rng, 3, 6)
    s = minkowski_sum(p, q)
    for x in [(1, 0, 0), (1, 2, -3), (-2, 1, 1)]:
        assert s.support(x) == p.support(x) + q.support(x)


def test_box_zonotope_mixed_volume():
    # V(B, B, B) = vol(B) for B a box, both by zonotopes and polarization
    b = box([1, 2, 3])
    z = Zonotope.from_generators([(Fraction(1, 2), 0, 0), (0, 1, 0), (0, 0, Fraction(3, 2))], 3)
    assert zonotope_mixed_volume([z, z, z]) == 6 == b.volume()
    assert mixed_volume_polarization([b, b, b]) == 6
