from __future__ import annotations

from fractions import Fraction

import numpy as np
from hypothesis import given, strategies as st

from polyalg.linalg import (
    canonicalize,
    det,
    float_inertia,
    float_rank,
    gram_det,
    inertia,
    int_det,
    intersection_dim,
    kernel,
    line_direction,
    matmul,
    orthogonal_complement,
    orthogonal_projection,
    primitive,
    rank,
    rref,
    sin_squared,
    subspace_sum,
    transpose,
)
from strategies import rationals

small_ints = st.integers(min_value=-4, max_value=4)


def square(n):
    return st.lists(st.lists(rationals, min_size=n, max_size=n), min_size=n, max_size=n)


def test_primitive_and_line_direction():
    assert primitive([2, -4, 6]) == ((1, -2, 3), Fraction(2))
    assert primitive([Fraction(1, 2), Fraction(1, 3)]) == ((3, 2), Fraction(1, 6))
    assert line_direction([-2, 4]) == (1, -2)
    assert line_direction([0, -3]) == (0, 1)


def test_rref_and_kernel():
    rows = [[1, 2, 3], [2, 4, 6], [1, 0, 1]]
    r, pivots = rref(rows)
    assert pivots == [0, 1]
    ker = kernel(rows, 3)
    assert len(ker) == 1
    assert all(sum(Fraction(a) * b for a, b in zip(row, ker[0])) == 0 for row in rows)


def test_sin_squared_examples():
    e1, e2 = canonicalize([[1, 0]], 2), canonicalize([[0, 1]], 2)
    diag = canonicalize([[1, 1]], 2)
    assert sin_squared(e1, e2) == 1
    assert sin_squared(e1, diag) == Fraction(1, 2)
    assert sin_squared(e1, e1) == 0


def test_projection_and_complement():
    w = canonicalize([[1, 1]], 2)
    p = orthogonal_projection(w)
    assert p == [[Fraction(1, 2), Fraction(1, 2)], [Fraction(1, 2), Fraction(1, 2)]]
    assert orthogonal_complement(w) == canonicalize([[1, -1]], 2)


def test_inertia_zero_diagonal_blocks():
    assert inertia([[0, 1], [1, 0]]) == (1, 0, 1)
    assert inertia([[0, -1, -1], [-1, 0, -1], [-1, -1, 0]]) == (2, 0, 1)
    assert inertia([[1, 0], [0, 0]]) == (1, 1, 0)


@given(square(3))
def test_det_matches_numpy(m):
    expected = np.linalg.det(np.array([[float(x) for x in r] for r in m]))
    assert abs(float(det(m)) - expected) < 1e-6 * max(1.0, abs(expected))


@given(st.lists(st.lists(small_ints, min_size=4, max_size=4), min_size=4, max_size=4))
def test_int_det_matches_rational_det(m):
    assert int_det(m) == det(m)


@given(st.lists(st.lists(rationals, min_size=4, max_size=4), min_size=1, max_size=5))
def test_rank_nullity(rows):
    assert rank(rows) + len(kernel(rows, 4)) == 4
    assert float_rank([[float(x) for x in r] for r in rows]) == rank(rows)


@given(square(4))
def test_inertia_is_congruence_invariant(m):
    sym = [[m[i][j] + m[j][i] for j in range(4)] for i in range(4)]
    p, z, q = inertia(sym)
    assert p + z + q == 4
    assert p + q == rank(sym)
    assert float_inertia([[float(x) for x in r] for r in sym]) == (p, z, q)
    # congruence by an invertible upper-triangular matrix
    t = [[Fraction(1) if i == j else (Fraction(i + j, 3) if j > i else Fraction(0)) for j in range(4)] for i in range(4)]
    assert inertia(matmul(matmul(transpose(t), sym), t)) == (p, z, q)


@given(st.lists(st.lists(small_ints, min_size=3, max_size=3), min_size=1, max_size=2),
       st.lists(st.lists(small_ints, min_size=3, max_size=3), min_size=1, max_size=2))
def test_grassmann_formula(a, b):
    a = [v for v in a if any(v)] or [[1, 0, 0]]
    b = [v for v in b if any(v)] or [[0, 1, 0]]
    sa, sb = canonicalize(a, 3), canonicalize(b, 3)
    s = subspace_sum(sa, sb)
    assert s.dim == sa.dim + sb.dim - intersection_dim(sa, sb)
    sin2 = sin_squared(sa, sb)
    assert 0 <= sin2 <= 1
    if intersection_dim(sa, sb) == 0:
        expected = gram_det(list(sa.basis) + list(sb.basis)) / (gram_det(list(sa.basis)) * gram_det(list(sb.basis)))
        assert sin2 == expected
    else:
        assert sin2 == 0
