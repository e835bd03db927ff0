"""The algebra spanned by the classes x_L, L in the lattice of an arrangement.

Products follow ``x_L * x_M = sin(L, M) x_{L+M}`` when ``L`` and ``M`` meet
only in zero, and vanish otherwise.  The graded Mobius algebra is the same
bookkeeping with every structure constant equal to one.

Besides the radical-valued public surface, every operation that needs rank or
inertia works in the *rescaled* basis ``xt_L = r_L x_L`` with
``r_L = sqrt(det Gram(B_L))`` for the RREF basis ``B_L`` of ``L``.  There
``xt_L * xt_M = |det(change of basis)| xt_{L+M}``, a rational constant, and a
positive diagonal rescaling changes neither rank nor inertia.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .arrangement import LineArrangement, SubspaceLattice, build_lattice
from .exact_scalar import RadicalScalar, as_fraction, radical_sqrt
from .linalg import (
    Subspace,
    canonicalize,
    gram_det,
    inertia,
    float_inertia,
    float_rank,
    intersection_dim,
    kernel,
    rank,
    sin_squared,
    subspace_sum,
    transpose,
    matmul,
)

ZERO = RadicalScalar()
ONE = RadicalScalar.coerce(1)


class AlgebraError(ValueError):
    pass


def _rational_sqrt(q: Fraction) -> Fraction:
    a, b = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if a * a != q.numerator or b * b != q.denominator:
        raise AlgebraError(f"{q} is not a rational square")
    return Fraction(a, b)


@dataclass(frozen=True)
class SymElement:
    """Homogeneous element ``sum_L c_L x_L`` of degree ``degree``."""

    degree: int
    coefficients: tuple  # sorted tuple of (Subspace, coefficient)
    algebra: "SymAlgebra" = field(compare=False, repr=False)

    @property
    def coeffs(self) -> dict:
        return dict(self.coefficients)

    def coefficient(self, s: Subspace):
        return self.coeffs.get(s, self.algebra.zero_scalar)

    def is_zero(self) -> bool:
        return not self.coefficients

    def __add__(self, other: SymElement) -> SymElement:
        self._check(other)
        if other.degree != self.degree:
            raise AlgebraError("adding elements of different degrees")
        out = self.coeffs
        for s, c in other.coefficients:
            out[s] = out.get(s, self.algebra.zero_scalar) + c
        return self.algebra.element(self.degree, out)

    def __neg__(self) -> SymElement:
        return self.algebra.element(self.degree, {s: -c for s, c in self.coefficients})

    def __sub__(self, other: SymElement) -> SymElement:
        return self + (-other)

    def scale(self, a) -> SymElement:
        return self.algebra.element(self.degree, {s: c * a for s, c in self.coefficients})

    def __mul__(self, other):
        if isinstance(other, SymElement):
            return self.algebra.multiply(self, other)
        return self.scale(other)

    __rmul__ = scale

    def _check(self, other: SymElement) -> None:
        if other.algebra is not self.algebra:
            raise AlgebraError("elements belong to different algebras")

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "terms": [
                {"subspace": [[str(x) for x in row] for row in s.basis], "coeff": str(c)}
                for s, c in self.coefficients
            ],
        }


class SymAlgebra:
    """``A_+(E)`` (``mobius=False``) or the graded Mobius algebra ``B(E)``."""

    def __init__(self, arrangement: LineArrangement | SubspaceLattice, mobius: bool = False):
        if isinstance(arrangement, SubspaceLattice):
            self.lattice = arrangement
            self.arrangement = arrangement.arrangement
        else:
            self.arrangement = arrangement
            self.lattice = build_lattice(arrangement)
        self.mobius = mobius
        self.n = self.arrangement.ambient_dim
        self.zero_scalar = Fraction(0) if mobius else ZERO
        self.one_scalar = Fraction(1) if mobius else ONE
        self._index = [self.lattice.index(k) for k in range(self.n + 1)]
        self._sin: dict = {}
        self._struct: dict = {}
        self._scale: dict = {}

    # construction ---------------------------------------------------------
    def basis(self, k: int) -> list[Subspace]:
        return self.lattice.levels[k]

    def dim(self, k: int) -> int:
        return len(self.lattice.levels[k])

    def element(self, degree: int, coeffs: dict) -> SymElement:
        for s in coeffs:
            if s not in self._index[degree]:
                raise AlgebraError(f"{s} is not in level {degree} of the lattice")
        conv = as_fraction if self.mobius else RadicalScalar.coerce
        items = tuple(sorted((s, conv(c)) for s, c in coeffs.items() if c != 0))
        return SymElement(degree, items, self)

    def zero(self, degree: int) -> SymElement:
        return SymElement(degree, (), self)

    def x(self, s: Subspace) -> SymElement:
        return self.element(s.dim, {s: self.one_scalar})

    def line(self, i: int) -> Subspace:
        return self.basis(1)[self._line_pos(i)]

    def _line_pos(self, i: int) -> int:
        s = canonicalize([self.arrangement.lines[i]], self.n)
        return self._index[1][s]

    def unit(self) -> SymElement:
        return self.x(self.basis(0)[0])

    def from_line_weights(self, weights) -> SymElement:
        """Degree-one element of the symmetric measure with weight ``w`` on ``+-xi``.

        The facet measure ``w*|xi|`` is the coefficient of ``x_L``.
        """
        coeffs = {}
        for i, w in enumerate(weights):
            if w == 0:
                continue
            xi = self.arrangement.lines[i]
            norm = radical_sqrt(sum(v * v for v in xi))
            coeffs[canonicalize([xi], self.n)] = Fraction(w) if self.mobius else norm * Fraction(w)
        return self.element(1, coeffs)

    # products -------------------------------------------------------------
    def sin(self, a: Subspace, b: Subspace):
        key = (a, b) if a <= b else (b, a)
        if key not in self._sin:
            self._sin[key] = radical_sqrt(sin_squared(a, b))
        return self._sin[key]

    def structure_constant(self, a: Subspace, b: Subspace):
        if intersection_dim(a, b) > 0:
            return self.zero_scalar
        return self.one_scalar if self.mobius else self.sin(a, b)

    def multiply(self, a: SymElement, b: SymElement) -> SymElement:
        a._check(b)
        deg = a.degree + b.degree
        if deg > self.n:
            return self.zero(deg)
        out: dict = {}
        for s, c in a.coefficients:
            for t, d in b.coefficients:
                k = self.structure_constant(s, t)
                if k == 0:
                    continue
                u = subspace_sum(s, t)
                out[u] = out.get(u, self.zero_scalar) + c * d * k
        return self.element(deg, out)

    def product(self, factors, start: SymElement | None = None) -> SymElement:
        acc = self.unit() if start is None else start
        for f in factors:
            acc = self.multiply(acc, f)
        return acc

    def sigma(self, x: SymElement) -> SymElement:
        return x if x.degree % 2 == 0 else -x

    def top_evaluate(self, x: SymElement):
        if x.degree != self.n:
            raise AlgebraError(f"top evaluation needs degree {self.n}, got {x.degree}")
        return x.coefficient(self.basis(self.n)[0])

    def cone_membership(self, x: SymElement) -> bool:
        if x.degree != 1:
            return False
        coeffs = x.coeffs
        for s in self.basis(1):
            c = coeffs.get(s)
            if c is None:
                return False
            sgn = c.sign() if isinstance(c, RadicalScalar) else (c > 0) - (c < 0)
            if sgn <= 0:
                return False
        return True

    def multiplication_table(self) -> dict:
        """All nonzero products of basis elements, keyed by lattice positions."""
        table = {}
        for k in range(self.n + 1):
            for l in range(k, self.n + 1 - k):
                for i, s in enumerate(self.basis(k)):
                    for j, t in enumerate(self.basis(l)):
                        if k == l and j < i:
                            continue
                        c = self.structure_constant(s, t)
                        if c == 0:
                            continue
                        u = subspace_sum(s, t)
                        table[(k, i, l, j)] = (self._index[k + l][u], c)
        return table

    # rescaled rational basis ------------------------------------------------
    def scale_squared(self, s: Subspace) -> Fraction:
        """``r_L^2 = det Gram`` of the RREF basis of ``L``."""
        if s not in self._scale:
            self._scale[s] = gram_det(list(s.basis))
        return self._scale[s]

    def scaled_constant(self, a: Subspace, b: Subspace) -> Fraction:
        """Rational constant with ``xt_a * xt_b = c * xt_{a+b}``."""
        key = (a, b) if a <= b else (b, a)
        if key not in self._struct:
            if intersection_dim(a, b) > 0:
                c = Fraction(0)
            elif self.mobius:
                c = Fraction(1)
            else:
                u = subspace_sum(a, b)
                c = _rational_sqrt(gram_det(list(a.basis) + list(b.basis)) / self.scale_squared(u))
            self._struct[key] = c
        return self._struct[key]

    def to_scaled(self, x: SymElement) -> dict:
        """Coordinates of ``x`` in the rescaled basis (must be rational)."""
        out = {}
        for s, c in x.coefficients:
            if self.mobius:
                out[s] = Fraction(c)
            else:
                out[s] = (RadicalScalar.coerce(c) / radical_sqrt(self.scale_squared(s))).to_fraction()
        return out

    def from_scaled(self, degree: int, coords: dict) -> SymElement:
        if self.mobius:
            return self.element(degree, {s: Fraction(c) for s, c in coords.items()})
        return self.element(
            degree, {s: radical_sqrt(self.scale_squared(s)) * c for s, c in coords.items()}
        )

    def _scaled_mul(self, x: dict, y: dict) -> dict:
        out: dict = {}
        for s, c in x.items():
            for t, d in y.items():
                k = self.scaled_constant(s, t)
                if k == 0:
                    continue
                u = subspace_sum(s, t)
                out[u] = out.get(u, Fraction(0)) + c * d * k
        return {s: c for s, c in out.items() if c != 0}

    def _scaled_product(self, factors) -> dict:
        acc = {self.basis(0)[0]: Fraction(1)}
        for f in factors:
            acc = self._scaled_mul(acc, self.to_scaled(f))
        return acc

    def _check_cone(self, elements) -> None:
        for c in elements:
            if c.degree != 1 or not self.cone_membership(c):
                raise AlgebraError("reference element is not in the cone K(E)")

    # Lefschetz and Hodge-Riemann -----------------------------------------------
    def lefschetz_scaled(self, k: int, c_list) -> list[list[Fraction]]:
        """Rational matrix (rows: level n-k, cols: level k) in the rescaled bases."""
        if len(c_list) != self.n - 2 * k:
            raise AlgebraError(f"need {self.n - 2 * k} reference elements, got {len(c_list)}")
        self._check_cone(c_list)
        lc = self._scaled_product(c_list)
        rows = self._index[self.n - k]
        m = [[Fraction(0)] * self.dim(k) for _ in range(self.dim(self.n - k))]
        for j, s in enumerate(self.basis(k)):
            for u, c in self._scaled_mul({s: Fraction(1)}, lc).items():
                m[rows[u]][j] = c
        return m

    def lefschetz_matrix(self, k: int, c_list, exact: bool = True, tol: float = 1e-9):
        """Multiplication by ``l_C`` from level ``k`` to level ``n - k``.

        Returns ``(matrix, rank)``; the matrix has radical entries (rational for
        the Mobius algebra) with rows indexed by level ``n-k``.
        """
        scaled = self.lefschetz_scaled(k, c_list)
        if self.mobius:
            mat = scaled
        else:
            rs = [radical_sqrt(self.scale_squared(s)) for s in self.basis(k)]
            ts = [radical_sqrt(self.scale_squared(s)) for s in self.basis(self.n - k)]
            # x_L = xt_L / r_L, so entry (i, j) picks up t_i / r_j
            mat = [
                [(ts[i] / rs[j]) * scaled[i][j] if scaled[i][j] else ZERO for j in range(len(rs))]
                for i in range(len(ts))
            ]
        r = rank(scaled) if exact else float_rank([[float(x) for x in row] for row in scaled], tol)
        return mat, r

    def hr_gram_scaled(self, k: int, c_list) -> list[list[Fraction]]:
        if len(c_list) != self.n - 2 * k:
            raise AlgebraError(f"need {self.n - 2 * k} reference elements, got {len(c_list)}")
        self._check_cone(c_list)
        lc = self._scaled_product(c_list)
        top = self.basis(self.n)[0]
        basis = self.basis(k)
        images = [self._scaled_mul({s: Fraction(1)}, lc) for s in basis]
        sgn = -1 if k % 2 else 1
        g = [[Fraction(0)] * len(basis) for _ in basis]
        for i, s in enumerate(basis):
            for j in range(i, len(basis)):
                v = self._scaled_mul({s: Fraction(1)}, images[j]).get(top, Fraction(0)) * sgn
                g[i][j] = g[j][i] = v
        return g

    def hr_gram_sym(self, k: int, c_list):
        """Gram matrix of ``q(x, y) = top(sigma(x) y l_C)`` on the basis ``x_L``."""
        scaled = self.hr_gram_scaled(k, c_list)
        if self.mobius:
            return scaled
        rs = [radical_sqrt(self.scale_squared(s)) for s in self.basis(k)]
        g = [[scaled[i][j] / (rs[i] * rs[j]) if scaled[i][j] else ZERO for j in range(len(rs))] for i in range(len(rs))]
        for i in range(len(rs)):
            for j in range(i):
                if g[i][j] != g[j][i]:
                    raise AlgebraError("Hodge-Riemann Gram matrix is not symmetric")
        return g

    def primitive_scaled(self, k: int, c0: SymElement, c_list) -> list[dict]:
        self._check_cone([c0])
        lc0 = self.to_scaled(c0)
        target = self._index[self.n - k + 1] if self.n - k + 1 <= self.n else {}
        basis = self.basis(k)
        rows = [[Fraction(0)] * len(basis) for _ in range(len(target))]
        lc = self._scaled_product(c_list)
        for j, s in enumerate(basis):
            img = self._scaled_mul(self._scaled_mul({s: Fraction(1)}, lc), lc0)
            for u, c in img.items():
                rows[target[u]][j] = c
        ker = kernel(rows, len(basis)) if rows else kernel([], len(basis))
        return [{basis[i]: v[i] for i in range(len(basis)) if v[i] != 0} for v in ker]

    def primitive_basis(self, k: int, c0: SymElement, c_list) -> list[SymElement]:
        """Basis of ``{x in level k : x * l_C0 * l_C = 0}``."""
        return [self.from_scaled(k, v) for v in self.primitive_scaled(k, c0, c_list)]

    def hr_primitive_signature(self, k: int, c0: SymElement, c_list, exact: bool = True, tol: float = 1e-9):
        """Inertia of the Hodge-Riemann form restricted to primitive classes."""
        g = self.hr_gram_scaled(k, c_list)
        prim = self.primitive_scaled(k, c0, c_list)
        vecs = [[v.get(s, Fraction(0)) for s in self.basis(k)] for v in prim]
        if not vecs:
            return (0, 0, 0), 0
        restricted = matmul(matmul(vecs, g), transpose(vecs))
        if exact:
            return inertia(restricted), len(vecs)
        return float_inertia([[float(x) for x in r] for r in restricted], tol), len(vecs)


def signature(matrix, exact: bool = True, tol: float = 1e-9) -> tuple[int, int, int]:
    """Inertia ``(n_plus, n_zero, n_minus)`` of a symmetric matrix."""
    if exact:
        return inertia(matrix)
    return float_inertia([[float(x) for x in row] for row in matrix], tol)


def ell_symmetric(polytope, algebra: SymAlgebra) -> SymElement:
    """Degree-one class of a centrally symmetric polytope with normals on ``E``."""
    if polytope.ambient_dim != algebra.n:
        raise AlgebraError(f"polytope lives in R^{polytope.ambient_dim}, algebra in R^{algebra.n}")
    facets = {f.normal: f.weight for f in polytope.facets}
    lines = {canonicalize([l], algebra.n): l for l in algebra.arrangement.lines}
    coeffs = {}
    for normal, w in facets.items():
        opposite = tuple(-x for x in normal)
        if facets.get(opposite) != w:
            raise AlgebraError("polytope is not centrally symmetric")
        s = canonicalize([normal], algebra.n)
        if s not in lines:
            raise AlgebraError(f"facet normal {normal} is not on a line of the arrangement")
        mass = radical_sqrt(sum(v * v for v in normal)) * w
        coeffs[s] = Fraction(w) if algebra.mobius else mass
    return algebra.element(1, coeffs)


def cube_element(algebra: SymAlgebra) -> SymElement:
    """Class of the unit cube on the coordinate-axes arrangement."""
    return algebra.from_line_weights([1] * len(algebra.arrangement.lines))


def axes_isomorphic(n: int) -> bool:
    """Compare the multiplication tables of A_+ and B on the coordinate axes."""
    arr = LineArrangement.coordinate_axes(n)
    a = SymAlgebra(arr).multiplication_table()
    b = SymAlgebra(arr, mobius=True).multiplication_table()
    if a.keys() != b.keys():
        return False
    return all(a[key][0] == b[key][0] and a[key][1] == b[key][1] for key in a)


__all__ = [
    "AlgebraError",
    "SymAlgebra",
    "SymElement",
    "axes_isomorphic",
    "cube_element",
    "ell_symmetric",
    "signature",
]

