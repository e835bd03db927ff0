"""Exact rational linear algebra on lists of :class:`~fractions.Fraction`.

Matrices are plain row lists.  Elimination routines are written against the
field operations ``+ - * /`` only, so they run unchanged over rationals and
over :class:`~polyalg.exact_scalar.RadicalScalar`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Sequence

import numpy as np

from .exact_scalar import RadicalScalar, as_fraction, radical_sqrt

Vector = tuple  # tuple of Fraction
Matrix = list  # list of lists


def vec(values) -> tuple[Fraction, ...]:
    return tuple(as_fraction(v) for v in values)


def dot(u, v):
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def sign_of(x) -> int:
    if isinstance(x, RadicalScalar):
        return x.sign()
    return (x > 0) - (x < 0)


def is_zero(x) -> bool:
    if isinstance(x, RadicalScalar):
        return x.is_zero()
    return x == 0


def primitive(v) -> tuple[tuple[int, ...], Fraction]:
    """Write ``v = c * p`` with ``p`` a primitive integer vector and ``c > 0``."""
    v = vec(v)
    if all(x == 0 for x in v):
        raise ValueError("zero vector has no primitive direction")
    den = reduce(math.lcm, (x.denominator for x in v), 1)
    ints = [int(x * den) for x in v]
    g = reduce(math.gcd, (abs(i) for i in ints))
    p = tuple(i // g for i in ints)
    return p, Fraction(g, den)


def line_direction(v) -> tuple[int, ...]:
    """Primitive integer vector with first nonzero entry positive."""
    p, _ = primitive(v)
    for x in p:
        if x:
            return p if x > 0 else tuple(-y for y in p)
    raise AssertionError


def _lift(rows) -> list[list]:
    # ints would fall into float division
    return [[Fraction(x) if isinstance(x, int) else x for x in r] for r in rows]


def rref(rows: Sequence[Sequence], ncols: int | None = None):
    """Reduced row echelon form; returns ``(rows, pivot_columns)``."""
    m = _lift(rows)
    if not m:
        return [], []
    ncols = len(m[0]) if ncols is None else ncols
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if not is_zero(m[i][c])), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and not is_zero(m[i][c]):
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows) -> int:
    return len(rref(rows)[1])


def det(rows):
    """Determinant by Gaussian elimination (field arithmetic)."""
    m = _lift(rows)
    n = len(m)
    if n == 0:
        return Fraction(1)
    result = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if not is_zero(m[i][c])), None)
        if piv is None:
            return m[0][0] * 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            result = -result
        p = m[c][c]
        result = result * p
        for i in range(c + 1, n):
            if not is_zero(m[i][c]):
                f = m[i][c] / p
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return result


def int_det(rows) -> int:
    """Bareiss determinant for integer matrices."""
    m = [list(map(int, r)) for r in rows]
    n = len(m)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            sw = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if sw is None:
                return 0
            m[k], m[sw] = m[sw], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def kernel(rows, ncols: int) -> list[list]:
    """Basis of the right null space, one vector per free column."""
    if not rows:
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    red, piv = rref(rows, ncols)
    zero = red[0][0] * 0 if red else Fraction(0)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        v = [zero] * ncols
        v[f] = zero + 1
        for r, pc in enumerate(piv):
            v[pc] = -red[r][f]
        basis.append(v)
    return basis


def solve(a, b):
    """Solve the square system ``a x = b`` exactly."""
    n = len(a)
    aug = [list(a[i]) + [b[i]] for i in range(n)]
    red, piv = rref(aug, n)
    if piv != list(range(n)):
        raise ValueError("singular system")
    return [red[i][n] for i in range(n)]


def matmul(a, b):
    bt = list(zip(*b))
    return [[sum((x * y for x, y in zip(row, col)), a[0][0] * 0) for col in bt] for row in a]


def transpose(a):
    return [list(r) for r in zip(*a)]


def gram(vectors):
    return [[dot(u, v) for v in vectors] for u in vectors]


def gram_det(vectors) -> Fraction:
    if not vectors:
        return Fraction(1)
    return det(gram(vectors))


def gram_volume(vectors) -> RadicalScalar:
    """Volume ``sqrt(det Gram)`` of the parallelotope spanned by ``vectors``."""
    vectors = [vec(v) for v in vectors]
    g = gram_det(vectors)
    return radical_sqrt(max(g, Fraction(0)))


# ---------------------------------------------------------------------------
# subspaces


@dataclass(frozen=True, order=True)
class Subspace:
    """A linear subspace of Q^n stored by its unique RREF basis."""

    basis: tuple[tuple[Fraction, ...], ...]
    ambient_dim: int

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, v) -> bool:
        return rank(list(self.basis) + [vec(v)]) == self.dim

    def key(self) -> tuple:
        return tuple(tuple((x.numerator, x.denominator) for x in row) for row in self.basis)

    def integer_basis(self) -> list[tuple[int, ...]]:
        return [primitive(r)[0] for r in self.basis]

    def __repr__(self) -> str:
        rows = ", ".join("(" + ",".join(str(x) for x in r) + ")" for r in self.basis)
        return f"Subspace[{self.ambient_dim}]<{rows}>"


def canonicalize(vectors, n: int) -> Subspace:
    rows = []
    for v in vectors:
        v = vec(v)
        if len(v) != n:
            raise ValueError(f"vector {v} is not in R^{n}")
        rows.append(v)
    red, _ = rref(rows, n) if rows else ([], [])
    return Subspace(tuple(tuple(r) for r in red), n)


def zero_subspace(n: int) -> Subspace:
    return Subspace((), n)


def full_space(n: int) -> Subspace:
    return canonicalize([[int(i == j) for j in range(n)] for i in range(n)], n)


def _same_ambient(a: Subspace, b: Subspace) -> None:
    if a.ambient_dim != b.ambient_dim:
        raise ValueError("ambient dimension mismatch")


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    _same_ambient(a, b)
    return canonicalize(list(a.basis) + list(b.basis), a.ambient_dim)


def intersection_dim(a: Subspace, b: Subspace) -> int:
    return a.dim + b.dim - subspace_sum(a, b).dim


def sin_squared(a: Subspace, b: Subspace) -> Fraction:
    """Squared product of sines of the principal angles between ``a`` and ``b``."""
    _same_ambient(a, b)
    if a.dim == 0 or b.dim == 0:
        return Fraction(1)
    joint = gram_det(list(a.basis) + list(b.basis))
    if joint == 0:
        return Fraction(0)
    return joint / (gram_det(list(a.basis)) * gram_det(list(b.basis)))


def orthogonal_complement(w: Subspace) -> Subspace:
    n = w.ambient_dim
    if w.dim == 0:
        return full_space(n)
    return canonicalize(kernel([list(r) for r in w.basis], n), n)


def orthogonal_projection(w: Subspace):
    """Exact matrix of the orthogonal projection onto ``w``."""
    if w.dim == 0:
        raise ValueError("projection onto the zero subspace")
    b = [list(r) for r in w.basis]
    ginv = inverse(gram(b))
    bt = transpose(b)
    return matmul(matmul(bt, ginv), b)


def inverse(a):
    n = len(a)
    aug = [list(a[i]) + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    red, piv = rref(aug, 2 * n)
    if piv[:n] != list(range(n)) or len(piv) < n:
        raise ValueError("singular matrix")
    return [row[n:] for row in red]


def apply(m, v):
    return tuple(dot(row, v) for row in m)


# ---------------------------------------------------------------------------
# rank and inertia


def inertia(matrix) -> tuple[int, int, int]:
    """Exact ``(n_plus, n_zero, n_minus)`` of a symmetric matrix.

    Symmetric pivoting: a nonzero diagonal pivot contributes its sign; when
    the diagonal vanishes a 2x2 block ``[[0, b], [b, 0]]`` contributes one of
    each sign.  Each step is a congruence, so inertia is preserved.
    """
    m = _lift(matrix)
    n = len(m)
    for i in range(n):
        if len(m[i]) != n:
            raise ValueError("matrix is not square")
        for j in range(i):
            if m[i][j] != m[j][i]:
                raise ValueError("matrix is not symmetric")
    plus = minus = 0
    while m:
        k = len(m)
        d = next((i for i in range(k) if not is_zero(m[i][i])), None)
        if d is not None:
            p = m[d][d]
            s = sign_of(p)
            plus += s > 0
            minus += s < 0
            rest = [i for i in range(k) if i != d]
            col = [m[i][d] for i in rest]
            m = [
                [m[i][j] - col[a] * col[b] / p for b, j in enumerate(rest)]
                for a, i in enumerate(rest)
            ]
            continue
        pair = next(((i, j) for i in range(k) for j in range(i + 1, k) if not is_zero(m[i][j])), None)
        if pair is None:
            break
        i0, j0 = pair
        b = m[i0][j0]
        plus += 1
        minus += 1
        rest = [i for i in range(k) if i not in pair]
        # Schur complement of [[0,b],[b,0]]: inverse is [[0,1/b],[1/b,0]]
        m = [
            [m[i][j] - (m[i][i0] * m[j0][j] + m[i][j0] * m[i0][j]) / b for j in rest]
            for i in rest
        ]
    zero = n - plus - minus
    return plus, zero, minus


def float_rank(matrix, tol: float = 1e-9) -> int:
    a = np.asarray(matrix, dtype=float)
    if a.size == 0:
        return 0
    s = np.linalg.svd(a, compute_uv=False)
    scale = max(1.0, float(s[0]) if s.size else 1.0)
    return int(np.sum(s > tol * scale))


def float_inertia(matrix, tol: float = 1e-9) -> tuple[int, int, int]:
    a = np.asarray(matrix, dtype=float)
    if a.size == 0:
        return 0, 0, 0
    w = np.linalg.eigvalsh((a + a.T) / 2)
    scale = max(1.0, float(np.max(np.abs(w))))
    plus = int(np.sum(w > tol * scale))
    minus = int(np.sum(w < -tol * scale))
    return plus, len(w) - plus - minus, minus
