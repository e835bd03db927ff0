"""Exact algebraic properties, each on at least 100 randomized cases."""
from __future__ import annotations

from fractions import Fraction

from hypothesis import given, settings, strategies as st

from polyalg.degree_one import DegreeOneSpace, euler_verdier_deg1, pair_top, restrict
from polyalg.linalg import canonicalize, orthogonal_complement
from polyalg.measures import blaschke_sum
from polyalg.polytope_geom import polygon_from_measure, random_polytope, surface_class
from polyalg.rng import substream
from polyalg.sym_algebra import SymAlgebra
from strategies import arrangement_from, seeds

CASES = settings(max_examples=100)


def random_element(alg: SymAlgebra, k: int, rng):
    basis = alg.basis(k)
    coeffs = {s: Fraction(int(rng.integers(-4, 5)), int(rng.integers(1, 4))) for s in basis}
    return alg.element(k, coeffs)


def random_positive(alg: SymAlgebra, rng):
    return alg.from_line_weights([Fraction(int(rng.integers(1, 5)), int(rng.integers(1, 3))) for _ in alg.arrangement.lines])


def algebra_for(seed: int, dims=(3, 4)):
    rng = substream(seed, "prop")
    n = dims[int(rng.integers(0, len(dims)))]
    arr = arrangement_from(seed, n, n + int(rng.integers(0, 3)))
    return SymAlgebra(arr), rng


@CASES
@given(seeds, st.booleans())
def test_multiplication_is_associative(seed, mobius):
    alg, rng = algebra_for(seed)
    if mobius:
        alg = SymAlgebra(alg.lattice, mobius=True)
    x, y, z = (random_element(alg, 1, rng) for _ in range(3))
    assert (x * y) * z == x * (y * z)
    w = random_element(alg, 2, rng) if alg.n >= 3 else x
    assert (w * x) * y == w * (x * y)


@CASES
@given(seeds)
def test_multiplication_is_commutative(seed):
    alg, rng = algebra_for(seed)
    x, y = random_element(alg, 1, rng), random_element(alg, 2, rng)
    assert x * y == y * x


@CASES
@given(seeds)
def test_sigma_is_an_involutive_automorphism(seed):
    alg, rng = algebra_for(seed)
    x, y = random_element(alg, 1, rng), random_element(alg, 2, rng)
    assert alg.sigma(x * y) == alg.sigma(x) * alg.sigma(y)
    assert alg.sigma(alg.sigma(x)) == x
    assert alg.sigma(x + x) == alg.sigma(x) + alg.sigma(x)


@CASES
@given(seeds)
def test_symmetric_gram_is_symmetric(seed):
    alg, rng = algebra_for(seed, dims=(3, 4))
    k = 1
    cs = [random_positive(alg, rng) for _ in range(alg.n - 2 * k)]
    x, y = random_element(alg, k, rng), random_element(alg, k, rng)
    lc = alg.product(cs)
    assert alg.top_evaluate(alg.sigma(x) * y * lc) == alg.top_evaluate(alg.sigma(y) * x * lc)


@CASES
@given(seeds)
def test_degree_one_pairing_is_symmetric(seed):
    alg, rng = algebra_for(seed, dims=(3,))
    space = DegreeOneSpace.of(alg.arrangement)
    x = space.element([Fraction(int(rng.integers(-3, 4))) for _ in range(space.dim)])
    y = space.element([Fraction(int(rng.integers(-3, 4))) for _ in range(space.dim)])
    s = random_positive(alg, rng)
    assert pair_top(euler_verdier_deg1(x), y, s) == pair_top(euler_verdier_deg1(y), x, s)


@CASES
@given(seeds)
def test_blaschke_sum_and_centering(seed):
    rng = substream(seed, "blaschke")
    n = 2 + int(rng.integers(0, 2))
    k, l = random_polytope(rng, n, n + 3), random_polytope(rng, n, n + 3)
    sk, sl = surface_class(k), surface_class(l)
    total = blaschke_sum(sk, sl)
    assert sk.centered and sl.centered and total.centered
    assert total == blaschke_sum(sl, sk)
    assert surface_class(k.translate([1] * n)) == sk
    assert euler_verdier_deg1(euler_verdier_deg1(total)) == total
    if n == 2:
        assert surface_class(polygon_from_measure(total)) == total


@CASES
@given(seeds)
def test_restriction_is_functorial(seed):
    rng = substream(seed, "restrict")
    n = 4
    space = DegreeOneSpace.of(arrangement_from(seed, n, n + 2))
    mu = space.element([Fraction(int(rng.integers(-3, 4))) for _ in range(space.dim)])
    nu = space.element([Fraction(int(rng.integers(-3, 4))) for _ in range(space.dim)])
    vs = [[int(x) for x in rng.integers(-2, 3, size=n)] for _ in range(3)]
    w1 = canonicalize([v for v in vs if any(v)] or [[1, 0, 0, 0]], n)
    w2 = canonicalize([w1.basis[0]], n)
    assert restrict(restrict(mu, w1), w2) == restrict(mu, w2)
    assert restrict(mu + nu, w1) == restrict(mu, w1) + restrict(nu, w1)
    assert restrict(mu, w1).centered
    perp = orthogonal_complement(w1)
    if perp.dim:
        assert restrict(restrict(mu, w1), perp) == type(mu).empty(n)
