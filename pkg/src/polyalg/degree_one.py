"""Degree-one classes as centered signed measures and their top pairings.

The pairing of two degree-one classes against a symmetric class of degree
``n-2`` is a sum over the ``(n-2)``-planes ``M`` in its support.  For each
``M`` the measures are restricted to the 2-plane ``W = M^perp``, where the
pairing of ``S_A - S_B`` with ``nu`` is ``int (h_A - h_B)(-u) d nu(u)``.  All
planar geometry runs in the coordinates of a rational basis of ``W`` with
Gram matrix ``G``; the only irrational factor is ``sqrt(det G)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from itertools import product

from .arrangement import LineArrangement
from .exact_scalar import RadicalScalar, radical_sqrt
from .linalg import (
    Subspace,
    canonicalize,
    float_inertia,
    gram,
    inertia,
    int_det,
    inverse,
    kernel,
    matmul,
    orthogonal_complement,
    orthogonal_projection,
    rank,
    rref,
    transpose,
    apply,
)
from .measures import MeasureError, WeightedDirections
from .polytope_geom import Polytope, angle_cmp, polygon_from_measure, surface_class
from .sym_algebra import SymAlgebra, SymElement


class PairingError(ValueError):
    pass


def euler_verdier_deg1(mu: WeightedDirections) -> WeightedDirections:
    """``sigma(mu) = -a_* mu``."""
    return -mu.antipode()


def restrict(mu: WeightedDirections, w: Subspace) -> WeightedDirections:
    """Push each entry to its orthogonal projection on ``w``; mass scales by ``|pi(u)|``."""
    if w.dim == 0:
        raise PairingError("restriction to the zero subspace")
    if w.ambient_dim != mu.ambient_dim:
        raise PairingError("ambient dimension mismatch")
    proj = orthogonal_projection(w)
    pairs = []
    for xi, wt in mu.entries:
        v = apply(proj, xi)
        if all(x == 0 for x in v):
            continue
        pairs.append((v, wt))
    return WeightedDirections.from_pairs(pairs, mu.ambient_dim)


# ---------------------------------------------------------------------------
# planar frames


@dataclass
class PlaneFrame:
    """Rational basis ``B`` (rows) of a 2-plane with ``G = B B^T``."""

    basis: list
    g: list
    ginv: list
    det_g: Fraction

    @classmethod
    def of(cls, w: Subspace) -> PlaneFrame:
        if w.dim != 2:
            raise PairingError("frame needs a 2-plane")
        b = [list(r) for r in w.basis]
        g = gram(b)
        return cls(b, g, inverse(g), g[0][0] * g[1][1] - g[0][1] * g[1][0])

    @property
    def metric_factor(self) -> RadicalScalar:
        return radical_sqrt(self.det_g)

    def coords(self, xi) -> tuple[Fraction, Fraction]:
        """Coordinates of the orthogonal projection of ``xi`` in the basis."""
        bx = [sum(a * Fraction(x) for a, x in zip(row, xi)) for row in self.basis]
        return tuple(apply(self.ginv, bx))

    def pair(self, a, c) -> Fraction:
        return sum(a[i] * self.g[i][j] * c[j] for i in range(2) for j in range(2))


def _restrict_coords(mu: WeightedDirections, frame: PlaneFrame):
    out = []
    for xi, w in mu.entries:
        c = frame.coords(xi)
        if c[0] == 0 and c[1] == 0:
            continue
        out.append((c, w))
    return out


def _closed_polygon(entries, ginv) -> list[tuple[Fraction, Fraction]]:
    """Vertices (scaled by ``1/sqrt(det G)``) of the polygon with edges ``w G^-1 R c``."""
    edges = []
    for c, w in entries:
        rc = (-c[1], c[0])
        e = (w * (ginv[0][0] * rc[0] + ginv[0][1] * rc[1]), w * (ginv[1][0] * rc[0] + ginv[1][1] * rc[1]))
        edges.append(e)
    edges.sort(key=cmp_to_key(angle_cmp))
    pts = [(Fraction(0), Fraction(0))]
    for e in edges:
        x, y = pts[-1]
        pts.append((x + e[0], y + e[1]))
    if pts[-1] != pts[0]:
        raise MeasureError("planar measure is not centered")
    return pts[:-1] or pts


def _split_centered(entries):
    """Positive and negative parts, each closed by the same correction entry."""
    pos = [(c, w) for c, w in entries if w > 0]
    neg = [(c, -w) for c, w in entries if w < 0]
    dx = sum((w * c[0] for c, w in pos), Fraction(0))
    dy = sum((w * c[1] for c, w in pos), Fraction(0))
    if dx or dy:
        pos.append(((-dx, -dy), Fraction(1)))
        neg.append(((-dx, -dy), Fraction(1)))
    return pos, neg


def _support(vertices, c, frame: PlaneFrame) -> Fraction:
    return max(frame.pair(a, c) for a in vertices)


@dataclass
class PlanarDecomposition:
    frame: PlaneFrame
    pos: list
    neg: list

    def evaluate(self, nu_entries) -> Fraction:
        """``sum_nu w (H_A(-c) - H_B(-c))`` in scaled coordinates."""
        total = Fraction(0)
        for c, w in nu_entries:
            m = (-c[0], -c[1])
            total += w * (_support(self.pos, m, self.frame) - _support(self.neg, m, self.frame))
        return total


def _decompose(entries, frame: PlaneFrame) -> PlanarDecomposition:
    pos, neg = _split_centered(entries)
    return PlanarDecomposition(frame, _closed_polygon(pos, frame.ginv), _closed_polygon(neg, frame.ginv))


_SQUARE = WeightedDirections.from_pairs([((1, 0), 1), ((-1, 0), 1), ((0, 1), 1), ((0, -1), 1)], 2)


def decompose_2d(mu: WeightedDirections) -> tuple[Polytope, Polytope]:
    """Polygons ``(A, B)`` in the standard plane with ``S_A - S_B = mu``.

    Both parts get the same centering entry; if either part is not
    full-dimensional a unit square measure is added to both.
    """
    if mu.ambient_dim != 2:
        raise MeasureError("decomposition needs a planar measure")
    if not mu.centered:
        raise MeasureError("measure is not centered")
    pos, neg = mu.positive_part(), mu.negative_part()
    cx, cy = pos.centroid()
    if cx or cy:
        corr = WeightedDirections.from_pairs([((-cx, -cy), 1)], 2)
        pos, neg = pos + corr, neg + corr

    def spans(m: WeightedDirections) -> bool:
        return rank([list(map(Fraction, xi)) for xi, _ in m.entries]) == 2 if m.entries else False

    if not (spans(pos) and spans(neg)):
        pos, neg = pos + _SQUARE, neg + _SQUARE
    return polygon_from_measure(pos), polygon_from_measure(neg)


# ---------------------------------------------------------------------------
# the pairing


class _FrameCache:
    def __init__(self):
        self.frames: dict[Subspace, PlaneFrame] = {}

    def frame(self, m: Subspace) -> PlaneFrame:
        if m not in self.frames:
            self.frames[m] = PlaneFrame.of(orthogonal_complement(m))
        return self.frames[m]


_FRAMES = _FrameCache()


def _check_inputs(mu, nu, s):
    n = mu.ambient_dim
    if nu.ambient_dim != n:
        raise PairingError("ambient dimension mismatch")
    if s.degree != n - 2:
        raise PairingError(f"symmetric factor must have degree {n - 2}, got {s.degree}")
    if not mu.centered or not nu.centered:
        raise PairingError("pairing needs centered measures")


def _scaled_coeff(coeff, frame: PlaneFrame) -> RadicalScalar:
    return RadicalScalar.coerce(coeff) * frame.metric_factor


def pair_top(mu: WeightedDirections, nu: WeightedDirections, s: SymElement) -> RadicalScalar:
    """Top-degree value of ``l_mu * l_nu * s`` for a symmetric class ``s``."""
    _check_inputs(mu, nu, s)
    total = RadicalScalar()
    for m, coeff in s.coefficients:
        frame = _FRAMES.frame(m)
        dec = _decompose(_restrict_coords(mu, frame), frame)
        t = dec.evaluate(_restrict_coords(nu, frame))
        if t:
            total = total + _scaled_coeff(coeff, frame) * t
    return total


def euler_form(mu: WeightedDirections, nu: WeightedDirections, s: SymElement) -> RadicalScalar:
    """``q(mu, nu) = top(sigma(mu) * nu * s)``."""
    return pair_top(euler_verdier_deg1(mu), nu, s)


def naive_line_kernel(mu: WeightedDirections, nu: WeightedDirections) -> Fraction:
    """``2^-n sum |det(xi, eta)| w v`` over resolved entries, planar case.

    Valid only for symmetric measures; kept to document the failure on
    non-symmetric input.
    """
    if mu.ambient_dim != 2:
        raise PairingError("naive kernel is implemented for the plane")
    total = Fraction(0)
    for (a, w), (b, v) in product(mu.entries, nu.entries):
        total += abs(a[0] * b[1] - a[1] * b[0]) * w * v
    return total / 4


def line_kernel(weight_lists, lines) -> Fraction:
    """``sum |det(xi_{L_1}, ..., xi_{L_n})| prod w_{i, L_i}`` over ordered line tuples.

    ``weight_lists[i][j]`` is the facet weight of the ``i``-th symmetric body on
    line ``j`` (per primitive normal).
    """
    n = len(lines[0])
    if len(weight_lists) != n:
        raise PairingError(f"need {n} weight lists")
    total = Fraction(0)
    idx = range(len(lines))
    for choice in product(idx, repeat=n):
        if len(set(choice)) < n:
            continue
        coeff = Fraction(1)
        for i, j in enumerate(choice):
            coeff *= Fraction(weight_lists[i][j])
            if coeff == 0:
                break
        if coeff == 0:
            continue
        d = int_det([lines[j] for j in choice])
        total += abs(d) * coeff
    return total


# ---------------------------------------------------------------------------
# the space A^1(E)


@dataclass
class DegreeOneSpace:
    """Centered signed measures on ``+-E``; dimension ``2|E| - n``."""

    arrangement: LineArrangement
    basis: list  # WeightedDirections
    coords: list  # slot vectors over (line, +1) then (line, -1)
    free: list  # slot index carrying each basis vector's unit entry

    @classmethod
    def of(cls, arr: LineArrangement) -> DegreeOneSpace:
        n = arr.ambient_dim
        slots = [(l, 1) for l in arr.lines] + [(l, -1) for l in arr.lines]
        # centering: sum_i (w_i+ - w_i-) xi_i = 0
        rows = [[Fraction(sgn * l[r]) for l, sgn in slots] for r in range(n)]
        ker = kernel(rows, len(slots))
        pivots = set(rref(rows, len(slots))[1])
        free = [c for c in range(len(slots)) if c not in pivots]
        basis = []
        for v in ker:
            pairs = [(tuple(sgn * x for x in l), c) for (l, sgn), c in zip(slots, v) if c != 0]
            basis.append(WeightedDirections.from_pairs(pairs, n))
        if len(basis) != 2 * len(arr.lines) - n:
            raise PairingError("arrangement does not span")
        return cls(arr, basis, ker, free)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def slot_vector(self, mu: WeightedDirections) -> list[Fraction]:
        d = mu.as_dict()
        lines = self.arrangement.lines
        vec = [d.pop(l, Fraction(0)) for l in lines] + [d.pop(tuple(-x for x in l), Fraction(0)) for l in lines]
        if d:
            raise PairingError("measure is not supported on the arrangement")
        return vec

    def coordinates(self, mu: WeightedDirections) -> list[Fraction]:
        """Coordinates of ``mu`` in the kernel basis (free-slot values)."""
        v = self.slot_vector(mu)
        if not mu.centered:
            raise PairingError("measure is not centered")
        # each kernel vector is 1 on its own free slot and 0 on the others
        return [v[i] for i in self.free]

    def element(self, coords) -> WeightedDirections:
        out = WeightedDirections.empty(self.arrangement.ambient_dim)
        for c, b in zip(coords, self.basis):
            if c:
                out = out + b.scale(c)
        return out


def _as_rational(x):
    x = RadicalScalar.coerce(x)
    return x.to_fraction() if x.is_rational() else x


def gram_matrix(elements, s: SymElement) -> list[list]:
    """Gram matrix of ``q(x, y) = top(sigma(x) y s)`` over a list of measures."""
    n = elements[0].ambient_dim
    if s.degree != n - 2:
        raise PairingError(f"symmetric factor must have degree {n - 2}")
    size = len(elements)
    acc = [[RadicalScalar() for _ in range(size)] for _ in range(size)]
    sig = [euler_verdier_deg1(e) for e in elements]
    for m, coeff in s.coefficients:
        frame = _FRAMES.frame(m)
        scale = _scaled_coeff(coeff, frame)
        decs = [_decompose(_restrict_coords(x, frame), frame) for x in sig]
        restricted = [_restrict_coords(y, frame) for y in elements]
        for i in range(size):
            for j in range(size):
                t = decs[i].evaluate(restricted[j])
                if t:
                    acc[i][j] = acc[i][j] + scale * t
    out = [[_as_rational(x) for x in row] for row in acc]
    for i in range(size):
        for j in range(i):
            if out[i][j] != out[j][i]:
                raise PairingError("degree-one Gram matrix is not symmetric")
    return out


def hr_gram_deg1(algebra: SymAlgebra, c_list) -> tuple[DegreeOneSpace, list[list]]:
    """Basis of ``A^1(E)`` and the Gram matrix of ``q_C`` on it."""
    space = DegreeOneSpace.of(algebra.arrangement)
    s = algebra.product(c_list)
    return space, gram_matrix(space.basis, s)


def symmetric_line_measure(arr: LineArrangement, i: int) -> WeightedDirections:
    """Weight 1 on ``+-xi_i``; its class is ``|xi_i| x_L``."""
    xi = arr.lines[i]
    w = Fraction(1)
    return WeightedDirections.from_pairs([(xi, w), (tuple(-x for x in xi), w)], arr.ambient_dim)


# ---------------------------------------------------------------------------
# Alexandrov-Fenchel and Hodge-Riemann checks


def c_product_from_polytopes(c_list, n: int):
    """Arrangement of facet-normal lines of ``c_list`` and the product of their classes."""
    from .sym_algebra import ell_symmetric

    dirs = set()
    for c in c_list:
        for f in c.facets:
            first = next(x for x in f.normal if x)
            dirs.add(f.normal if first > 0 else tuple(-x for x in f.normal))
    if not c_list:
        arr = LineArrangement.coordinate_axes(n)
    else:
        arr = LineArrangement.from_vectors(sorted(dirs), n)
    alg = SymAlgebra(arr)
    return alg, alg.product([ell_symmetric(c, alg) for c in c_list])


def af_check(k: Polytope, l: Polytope, c_list, s: SymElement | None = None) -> dict:
    """Compare ``V(K, -L, C)^2`` with ``V(K, -K, C) V(L, -L, C)``.

    ``V(X, -Y, C)`` is evaluated as the top pairing of ``S_X`` with ``a_* S_Y``.
    """
    n = k.ambient_dim
    if s is None:
        _, s = c_product_from_polytopes(c_list, n)
    if s.is_zero():
        return {"status": "degenerate", "detail": "product of reference classes vanishes"}
    sk, sl = surface_class(k), surface_class(l)
    a = pair_top(sk, sl.antipode(), s)
    b = pair_top(sk, sk.antipode(), s)
    c = pair_top(sl, sl.antipode(), s)
    slack = a * a - b * c
    ok = slack.sign() >= 0
    return {
        "status": "pass" if ok else "violation",
        "mixed_KL": str(a),
        "mixed_KK": str(b),
        "mixed_LL": str(c),
        "slack": str(slack),
        "slack_decimal": slack.to_decimal(12),
        "holds": ok,
    }


def hr_equality_check(
    algebra: SymAlgebra, q_mu: WeightedDirections, c_list, gram=None, space=None, exact: bool = True, tol: float = 1e-9
) -> dict:
    """Signature of ``q_C`` on ``{x in A^1(E) : q(x, Q) = 0}``.

    The hypothesis is checked as ``top(l_{-Q} l_Q l_C) > 0``; with the sign
    conventions used here this is ``-q(Q, Q) > 0``.
    """
    n = algebra.n
    s = algebra.product(c_list)
    if s.is_zero():
        return {"status": "degenerate", "detail": "product of reference classes vanishes"}
    hyp = pair_top(q_mu.antipode(), q_mu, s)
    if hyp.sign() <= 0:
        return {"status": "hypothesis_failed", "hypothesis_value": str(hyp)}
    if space is None or gram is None:
        space, gram = hr_gram_deg1(algebra, c_list)
    qc = space.coordinates(q_mu)
    functional = [[sum((gram[i][j] * qc[j] for j in range(space.dim)), Fraction(0)) for i in range(space.dim)]]
    prim = kernel(functional, space.dim)
    restricted = matmul(matmul(prim, gram), transpose(prim)) if prim else []
    if not prim:
        sig = (0, 0, 0)
    elif exact:
        sig = inertia(restricted)
    else:
        sig = float_inertia([[float(x) for x in row] for row in restricted], tol)
    ok = sig == (len(prim), 0, 0)
    return {
        "status": "pass" if ok else "violation",
        "hypothesis_value": str(hyp),
        "primitive_dim": len(prim),
        "signature": list(sig),
        "expected_dim": 2 * len(algebra.arrangement.lines) - n - 1,
    }


def restriction_rank(space: DegreeOneSpace) -> int:
    """Rank of ``A^1(E) -> prod_{L in E} A^1(L^perp)`` given by restriction."""
    arr = space.arrangement
    n = arr.ambient_dim
    rows: dict = {}
    for li, l in enumerate(arr.lines):
        w = orthogonal_complement(canonicalize([l], n))
        for j, b in enumerate(space.basis):
            for xi, wt in restrict(b, w).entries:
                rows.setdefault((li, xi), [Fraction(0)] * space.dim)[j] = wt
    return rank(list(rows.values())) if rows else 0


__all__ = [
    "DegreeOneSpace",
    "PairingError",
    "af_check",
    "decompose_2d",
    "euler_form",
    "euler_verdier_deg1",
    "gram_matrix",
    "hr_equality_check",
    "hr_gram_deg1",
    "line_kernel",
    "naive_line_kernel",
    "pair_top",
    "restrict",
    "restriction_rank",
]

