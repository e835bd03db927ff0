"""Exact rational polytopes.

The convex hull is an incremental beneath-beyond construction over integers
(rational input is scaled by the common denominator).  The boundary is kept as
a triangulation by ``(d-1)``-simplices; each simplex stores the primitive
outer normal ``xi`` of its supporting hyperplane, the offset ``b`` and the
integer ``k`` with ``cofactor-vector = k * xi``.  Then

* ``vol_{d-1}(simplex) / |xi| = |k| / (d-1)!`` is rational,
* the cone over the simplex from a new point ``p`` has volume ``s |k| / d!``
  with ``s = <xi, p> - b``,
* ``vol(P) = sum_F b_F w_F / d`` once simplices are grouped into facets.

Mixed volumes use the convention ``vol(sum l_i K_i) = sum multinomial(n; a)
V(K[a]) l^a`` so that ``V(K, ..., K) = vol(K)``.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cmp_to_key, reduce
from itertools import combinations, product

import numpy as np

from .exact_scalar import fraction_str
from .linalg import int_det, rank, solve, vec
from .measures import MeasureError, WeightedDirections, blaschke_sum

MAX_HULL_DIM = 6


class GeometryError(ValueError):
    pass


# ---------------------------------------------------------------------------
# integer hull kernel


def _cofactors(rows: list[list[int]], d: int) -> list[int]:
    """Generalized cross product of ``d-1`` integer vectors in Z^d."""
    out = []
    for j in range(d):
        minor = [[r[c] for c in range(d) if c != j] for r in rows]
        v = int_det(minor)
        out.append(-v if j % 2 else v)
    return out


def _affine_rank(points) -> int:
    if not points:
        return -1
    p0 = points[0]
    return rank([[Fraction(a - b) for a, b in zip(p, p0)] for p in points[1:]]) if len(points) > 1 else 0


def _initial_simplex(pts: list[tuple[int, ...]], d: int) -> list[int]:
    chosen = [0]
    rows: list[list[Fraction]] = []
    for i in range(1, len(pts)):
        cand = rows + [[Fraction(a - b) for a, b in zip(pts[i], pts[0])]]
        if rank(cand) == len(cand):
            rows = cand
            chosen.append(i)
            if len(chosen) == d + 1:
                break
    return chosen


@dataclass
class _HullResult:
    points: list
    facets: list  # (normal, offset, weight, frozenset of point indices)
    volume: Fraction
    vertices: list  # indices into points


def _batch_det(m: np.ndarray) -> np.ndarray:
    """Exact Bareiss determinants of a stack of int64 matrices.

    Callers guarantee that products of two minors fit in int64; every
    division in the Bareiss recurrence is exact.
    """
    m = m.copy()
    b, size = m.shape[0], m.shape[1]
    if size == 0:
        return np.ones(b, dtype=np.int64)
    sign = np.ones(b, dtype=np.int64)
    prev = np.ones(b, dtype=np.int64)
    dead = np.zeros(b, dtype=bool)
    rows = np.arange(b)
    for k in range(size - 1):
        zero = (m[:, k, k] == 0) & ~dead
        if zero.any():
            idx = np.nonzero(zero)[0]
            sub = m[idx, k + 1 :, k] != 0
            has = sub.any(axis=1)
            dead[idx[~has]] = True
            sw_idx = idx[has]
            tgt = k + 1 + np.argmax(sub[has], axis=1)
            tmp = m[sw_idx, k, :].copy()
            m[sw_idx, k, :] = m[sw_idx, tgt, :]
            m[sw_idx, tgt, :] = tmp
            sign[sw_idx] *= -1
        piv = np.where(dead, 1, m[:, k, k])
        m[:, k + 1 :, k + 1 :] = (
            m[:, k + 1 :, k + 1 :] * piv[:, None, None]
            - m[:, k + 1 :, k][:, :, None] * m[:, k, k + 1 :][:, None, :]
        ) // prev[:, None, None]
        prev = piv
    out = sign * m[rows, size - 1, size - 1]
    out[dead] = 0
    return out


class _Boundary:
    def __init__(self, pts, d):
        self.pts = pts
        self.d = d
        bound = max(1, max(abs(x) for p in pts for x in p))
        # Hadamard bound on (d-1)-minors of difference vectors
        cof = (2 * bound * math.isqrt(d) + 2) ** (d - 1)
        self.fast = cof * cof * 4 < 2**62 and cof * bound * (d + 1) * 4 < 2**62
        self.dtype = np.int64 if self.fast else object
        self.cap = 64
        self.normals = np.zeros((self.cap, d), dtype=self.dtype)
        self.offsets = np.zeros(self.cap, dtype=self.dtype)
        self.alive = np.zeros(self.cap, dtype=bool)
        self.simplices: list = []  # (verts, normal, offset, k)
        self.ridges: dict = {}
        self.interior = None  # (integer point, denominator)
        self.np_pts = np.array(pts, dtype=np.int64) if self.fast else None
        self._drop = [[c for c in range(d) if c != j] for j in range(d)]

    def _grow(self):
        self.cap *= 2
        for name in ("normals", "offsets", "alive"):
            old = getattr(self, name)
            new = np.zeros((self.cap,) + old.shape[1:], dtype=old.dtype)
            new[: len(old)] = old
            setattr(self, name, new)

    def _cofactor_rows(self, batch) -> list[list[int]]:
        d = self.d
        if not self.fast:
            out = []
            for verts in batch:
                p0 = self.pts[verts[0]]
                rows = [[a - b for a, b in zip(self.pts[v], p0)] for v in verts[1:]]
                out.append(_cofactors(rows, d))
            return out
        idx = np.array(batch, dtype=np.int64)
        diffs = self.np_pts[idx[:, 1:]] - self.np_pts[idx[:, :1]]  # (B, d-1, d)
        minors = np.stack([diffs[:, :, cols] for cols in self._drop], axis=1)  # (B, d, d-1, d-1)
        dets = _batch_det(minors.reshape(-1, d - 1, d - 1)).reshape(len(batch), d)
        dets[:, 1::2] *= -1
        return dets.tolist()

    def add_simplices(self, batch) -> None:
        d = self.d
        ip, den = self.interior
        for verts, c in zip(batch, self._cofactor_rows(batch)):
            g = reduce(math.gcd, (abs(x) for x in c))
            if g == 0:
                raise GeometryError("degenerate boundary simplex")
            xi = [x // g for x in c]
            p0 = self.pts[verts[0]]
            b = sum(x * y for x, y in zip(xi, p0))
            if sum(x * y for x, y in zip(xi, ip)) - den * b > 0:
                xi = [-x for x in xi]
                b = -b
            sid = len(self.simplices)
            if sid >= self.cap:
                self._grow()
            self.simplices.append((verts, tuple(xi), b, g))
            self.normals[sid] = xi
            self.offsets[sid] = b
            self.alive[sid] = True
            for r in combinations(verts, d - 1):
                self.ridges.setdefault(r, []).append(sid)

    def add_point(self, pi: int) -> bool:
        m = len(self.simplices)
        p = np.array(self.pts[pi], dtype=self.dtype)
        s = self.normals[:m] @ p - self.offsets[:m]
        vis = np.nonzero(self.alive[:m] & (s > 0))[0]
        if len(vis) == 0:
            return False
        visible = set(int(v) for v in vis)
        horizon = []
        for sid in visible:
            verts = self.simplices[sid][0]
            for r in combinations(verts, self.d - 1):
                other = [o for o in self.ridges[r] if o != sid]
                if len(other) != 1:
                    raise GeometryError("boundary is not a closed pseudo-manifold")
                if other[0] not in visible:
                    horizon.append(r)
        for sid in visible:
            self.alive[sid] = False
            for r in combinations(self.simplices[sid][0], self.d - 1):
                lst = self.ridges[r]
                lst.remove(sid)
                if not lst:
                    del self.ridges[r]
        self.add_simplices([tuple(sorted(r + (pi,))) for r in horizon])
        return True


def _hull_full(pts: list[tuple[int, ...]], d: int) -> _HullResult:
    """Hull of integer points spanning R^d (d >= 1)."""
    if d == 1:
        lo = min(range(len(pts)), key=lambda i: pts[i][0])
        hi = max(range(len(pts)), key=lambda i: pts[i][0])
        a, b = pts[lo][0], pts[hi][0]
        facets = [((-1,), -a, Fraction(1), frozenset([lo])), ((1,), b, Fraction(1), frozenset([hi]))]
        return _HullResult(pts, facets, Fraction(b - a), sorted({lo, hi}))
    init = _initial_simplex(pts, d)
    bd = _Boundary(pts, d)
    bd.interior = ([sum(pts[i][j] for i in init) for j in range(d)], d + 1)
    bd.add_simplices([tuple(sorted(face)) for face in combinations(init, d)])
    rest = [i for i in range(len(pts)) if i not in set(init)]
    for i in rest:
        bd.add_point(i)

    # group boundary simplices into facets
    fact = math.factorial(d - 1)
    groups: dict = {}
    for sid, (verts, xi, b, k) in enumerate(bd.simplices):
        if not bd.alive[sid]:
            continue
        key = (xi, b)
        w, members = groups.get(key, (Fraction(0), set()))
        groups[key] = (w + Fraction(k, fact), members | set(verts))
    boundary_pts = set().union(*(m for _, m in groups.values()))
    facets = []
    for (xi, b), (w, members) in sorted(groups.items()):
        on = frozenset(i for i in boundary_pts if sum(x * y for x, y in zip(xi, pts[i])) == b)
        facets.append((xi, b, w, on))
    closing = [sum(f[2] * f[0][j] for f in facets) for j in range(d)]
    if any(closing):
        raise GeometryError("facet measure is not closed; hull construction failed")
    volume = sum(f[1] * f[2] for f in facets) / d

    incident: dict[int, list] = {}
    for xi, _, _, on in facets:
        for i in on:
            incident.setdefault(i, []).append(xi)
    vertices = sorted(i for i, ns in incident.items() if rank([list(map(Fraction, n)) for n in ns]) == d)
    return _HullResult(pts, facets, volume, vertices)


# ---------------------------------------------------------------------------
# polytopes


@dataclass(frozen=True)
class FacetData:
    normal: tuple[int, ...]
    offset: Fraction
    weight: Fraction


@dataclass(frozen=True)
class Polytope:
    ambient_dim: int
    vertices: tuple[tuple[Fraction, ...], ...]
    facets: tuple[FacetData, ...] = ()
    affine_dim: int = 0
    volume_value: Fraction = Fraction(0)

    @property
    def degenerate(self) -> bool:
        return self.affine_dim < self.ambient_dim

    def volume(self) -> Fraction:
        return self.volume_value

    def support(self, x) -> Fraction:
        x = vec(x)
        return max(sum(a * b for a, b in zip(v, x)) for v in self.vertices)

    def translate(self, t) -> Polytope:
        t = vec(t)
        return hull([tuple(a + b for a, b in zip(v, t)) for v in self.vertices], self.ambient_dim)

    def scale(self, lam) -> Polytope:
        lam = Fraction(lam)
        if lam == 0:
            return hull([tuple(Fraction(0) for _ in range(self.ambient_dim))], self.ambient_dim)
        return hull([tuple(lam * a for a in v) for v in self.vertices], self.ambient_dim)

    def __neg__(self) -> Polytope:
        return hull([tuple(-a for a in v) for v in self.vertices], self.ambient_dim)

    def to_json_obj(self) -> list:
        return [[fraction_str(x) for x in v] for v in self.vertices]

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json_obj(cls, obj, n: int | None = None) -> Polytope:
        pts = [tuple(Fraction(x) for x in v) for v in obj]
        return hull(pts, n if n is not None else len(pts[0]))

    @classmethod
    def from_json(cls, text: str) -> Polytope:
        return cls.from_json_obj(json.loads(text))


def _to_integer(points):
    den = reduce(math.lcm, (x.denominator for p in points for x in p), 1)
    return [tuple(int(x * den) for x in p) for p in points], den


def hull(points, n: int | None = None) -> Polytope:
    """Exact convex hull; lower-dimensional input yields a degenerate polytope."""
    points = [vec(p) for p in points]
    if not points:
        raise GeometryError("hull of an empty point set")
    n = len(points[0]) if n is None else n
    if any(len(p) != n for p in points):
        raise GeometryError(f"points do not live in R^{n}")
    if n > MAX_HULL_DIM:
        raise GeometryError(f"hull dimension {n} exceeds the cap {MAX_HULL_DIM}")
    points = sorted(set(points))
    ints, den = _to_integer(points)
    k = _affine_rank(ints)
    if k == 0:
        return Polytope(n, (points[0],), (), 0, Fraction(0))
    if k < n:
        # injective coordinate projection of the affine hull
        p0 = ints[0]
        diffs = [[Fraction(a - b) for a, b in zip(p, p0)] for p in ints[1:]]
        cols: list[int] = []
        for c in range(n):
            if rank([[r[j] for j in cols + [c]] for r in diffs]) > len(cols):
                cols.append(c)
            if len(cols) == k:
                break
        sub = [tuple(p[c] for c in cols) for p in ints]
        res = _hull_full(sub, k)
        verts = tuple(points[i] for i in res.vertices)
        return Polytope(n, tuple(sorted(verts)), (), k, Fraction(0))
    res = _hull_full(ints, n)
    verts = tuple(sorted(points[i] for i in res.vertices))
    facets = tuple(
        FacetData(xi, Fraction(b, den), w / Fraction(den) ** (n - 1)) for xi, b, w, _ in res.facets
    )
    return Polytope(n, verts, facets, n, res.volume / Fraction(den) ** n)


def volume(p: Polytope) -> Fraction:
    if p.degenerate:
        raise GeometryError("volume of a lower-dimensional polytope")
    return p.volume_value


def cube(n: int, side=1, centered: bool = True) -> Polytope:
    side = Fraction(side)
    lo = -side / 2 if centered else Fraction(0)
    return hull([tuple(lo + side * b for b in bits) for bits in product((0, 1), repeat=n)], n)


def box(sides, centered: bool = True) -> Polytope:
    sides = [Fraction(s) for s in sides]
    pts = []
    for bits in product((0, 1), repeat=len(sides)):
        pts.append(tuple((-s / 2 if centered else 0) + s * b for s, b in zip(sides, bits)))
    return hull(pts, len(sides))


def simplex(n: int) -> Polytope:
    pts = [tuple(Fraction(0) for _ in range(n))]
    pts += [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)]
    return hull(pts, n)


def surface_class(p: Polytope) -> WeightedDirections:
    if p.degenerate:
        raise GeometryError("surface class of a lower-dimensional polytope")
    mu = WeightedDirections.from_pairs(((f.normal, f.weight) for f in p.facets), p.ambient_dim)
    if not mu.centered:
        raise GeometryError("surface class is not centered")
    return mu


def minkowski_sum(p: Polytope, q: Polytope) -> Polytope:
    if p.ambient_dim != q.ambient_dim:
        raise GeometryError("ambient dimension mismatch")
    pts = {tuple(a + b for a, b in zip(u, v)) for u in p.vertices for v in q.vertices}
    return hull(list(pts), p.ambient_dim)


def minkowski_combination(bodies, coeffs, n: int) -> Polytope:
    """``sum c_i K_i`` for nonnegative rational ``c_i``; pairwise hulls keep sizes down."""
    acc = hull([tuple(Fraction(0) for _ in range(n))], n)
    for body, c in zip(bodies, coeffs):
        c = Fraction(c)
        if c == 0:
            continue
        acc = minkowski_sum(acc, body.scale(c))
    return acc


def safe_volume(p: Polytope) -> Fraction:
    return Fraction(0) if p.degenerate else p.volume_value


# ---------------------------------------------------------------------------
# zonotopes


@dataclass(frozen=True)
class Zonotope:
    """``center + sum_g [-g, g]``; support function ``h(x) = <center, x> + sum |<g, x>|``."""

    generators: tuple[tuple[Fraction, ...], ...]
    ambient_dim: int
    center: tuple[Fraction, ...] = field(default=())

    @classmethod
    def from_generators(cls, gens, n: int, center=None) -> Zonotope:
        gs = tuple(vec(g) for g in gens if any(x != 0 for x in vec(g)))
        c = vec(center) if center is not None else tuple(Fraction(0) for _ in range(n))
        return cls(gs, n, c)

    @classmethod
    def from_segments(cls, segments, n: int) -> Zonotope:
        gens, center = [], [Fraction(0)] * n
        for a, b in segments:
            a, b = vec(a), vec(b)
            gens.append(tuple((y - x) / 2 for x, y in zip(a, b)))
            center = [c + (x + y) / 2 for c, x, y in zip(center, a, b)]
        return cls.from_generators(gens, n, center)

    def support(self, x) -> Fraction:
        x = vec(x)
        h = sum(a * b for a, b in zip(self.center, x))
        for g in self.generators:
            h += abs(sum(a * b for a, b in zip(g, x)))
        return h

    def to_polytope(self) -> Polytope:
        n = self.ambient_dim
        acc = hull([self.center], n)
        for g in self.generators:
            seg = hull([g, tuple(-x for x in g)], n)
            acc = minkowski_sum(acc, seg)
        return acc


def projection_body(p: Polytope) -> Zonotope:
    """Generators ``w xi / 2`` per facet, merged along lines.

    Each facet contributes the segment ``[-g, g]`` with ``g = vol(F) u / 2``
    so that ``h(x) = (1/2) sum_F vol(F) |<u_F, x>|``.
    """
    if p.degenerate:
        raise GeometryError("projection body of a lower-dimensional polytope")
    merged: dict[tuple[int, ...], Fraction] = {}
    for f in p.facets:
        xi = f.normal
        first = next(x for x in xi if x)
        key = xi if first > 0 else tuple(-x for x in xi)
        merged[key] = merged.get(key, Fraction(0)) + f.weight / 2
    gens = [tuple(c * x for x in xi) for xi, c in sorted(merged.items())]
    return Zonotope.from_generators(gens, p.ambient_dim)


def zonotope_mixed_volume(zonotopes) -> Fraction:
    """``(1/n!) sum |det(2 g_1, ..., 2 g_n)|`` over one generator per zonotope."""
    n = zonotopes[0].ambient_dim
    if len(zonotopes) != n:
        raise GeometryError(f"need {n} zonotopes, got {len(zonotopes)}")
    total = Fraction(0)
    for choice in product(*(z.generators for z in zonotopes)):
        den = reduce(math.lcm, (x.denominator for g in choice for x in g), 1)
        m = [[int(x * den) for x in g] for g in choice]
        total += Fraction(abs(int_det(m)), den**n)
    return total * Fraction(2**n, math.factorial(n))


# ---------------------------------------------------------------------------
# mixed volumes


def _multinomial(alpha) -> int:
    out = math.factorial(sum(alpha))
    for a in alpha:
        out //= math.factorial(a)
    return out


def volume_polynomial(bodies, n: int) -> dict[tuple[int, ...], Fraction]:
    """Exact coefficients of ``vol(sum l_i K_i)`` by evaluation and solve.

    Evaluation points are the exponent vectors ``a`` with ``|a| = n``
    themselves; this principal lattice is unisolvent for homogeneous degree-n
    polynomials.
    """
    m = len(bodies)
    monos = [tuple(a) for a in _compositions(n, m)]
    rows, rhs = [], []
    for lam in monos:
        rows.append([Fraction(math.prod(l**e for l, e in zip(lam, mono))) for mono in monos])
        rhs.append(safe_volume(minkowski_combination(bodies, lam, n)))
    coeffs = solve(rows, rhs)
    return dict(zip(monos, coeffs))


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def mixed_volume_polarization(bodies, multiplicities=None) -> Fraction:
    """``V(K_1[a_1], ..., K_m[a_m])`` from the volume polynomial."""
    n = bodies[0].ambient_dim
    multiplicities = list(multiplicities) if multiplicities is not None else [1] * len(bodies)
    if sum(multiplicities) != n or len(multiplicities) != len(bodies):
        raise GeometryError("multiplicities must sum to the ambient dimension")
    keep = [(b, a) for b, a in zip(bodies, multiplicities) if a > 0]
    bodies = [b for b, _ in keep]
    alpha = tuple(a for _, a in keep)
    poly = volume_polynomial(bodies, n)
    return poly[alpha] / _multinomial(alpha)


def mixed_volume_inclusion_exclusion(bodies) -> Fraction:
    """``V(K_1, ..., K_n) = (1/n!) sum_S (-1)^(n-|S|) vol(sum_S K_i)``."""
    n = len(bodies)
    total = Fraction(0)
    for r in range(1, n + 1):
        for sub in combinations(bodies, r):
            total += (-1) ** (n - r) * safe_volume(minkowski_combination(sub, [1] * r, bodies[0].ambient_dim))
    return total / math.factorial(n)


# ---------------------------------------------------------------------------
# polygons


def _half(v) -> int:
    x, y = v
    return 0 if (y > 0 or (y == 0 and x > 0)) else 1


def angle_cmp(u, v) -> int:
    """Counter-clockwise angular order starting at the positive x-axis."""
    hu, hv = _half(u), _half(v)
    if hu != hv:
        return hu - hv
    cross = u[0] * v[1] - u[1] * v[0]
    return -1 if cross > 0 else (1 if cross < 0 else 0)


def polygon_from_measure(mu: WeightedDirections) -> Polytope:
    """Polygon with surface class ``mu`` and first vertex at the origin."""
    if mu.ambient_dim != 2:
        raise MeasureError("polygon reconstruction needs a planar measure")
    if not mu.is_nonnegative():
        raise MeasureError("polygon reconstruction needs nonnegative weights")
    if not mu.centered:
        raise MeasureError("measure is not centered")
    edges = [(-w * xi[1], w * xi[0]) for xi, w in mu.entries]
    edges.sort(key=cmp_to_key(angle_cmp))
    pts = [(Fraction(0), Fraction(0))]
    for e in edges[:-1]:
        x, y = pts[-1]
        pts.append((x + e[0], y + e[1]))
    return hull(pts, 2)


def mixed_area(a: Polytope, b: Polytope) -> Fraction:
    """``V(A, B) = (vol(A+B) - vol A - vol B) / 2``."""
    return (safe_volume(minkowski_sum(a, b)) - safe_volume(a) - safe_volume(b)) / 2


def mixed_area_support(a: Polytope, b: Polytope) -> Fraction:
    """``V(A, B) = (1/2) sum_F h_A(xi_F) w_F`` over the edges of ``B``."""
    return sum((a.support(f.normal) * f.weight for f in b.facets), Fraction(0)) / 2


def random_polytope(rng, n: int, m: int | None = None, max_den: int = 8, max_tries: int = 100) -> Polytope:
    """Hull of ``m`` points in ``[-1, 1]^n`` with denominators at most ``max_den``."""
    m = 2 * n + 2 if m is None else m
    for _ in range(max_tries):
        pts = []
        for _ in range(m):
            dens = rng.integers(1, max_den + 1, size=n)
            nums = [int(rng.integers(-int(q), int(q) + 1)) for q in dens]
            pts.append(tuple(Fraction(a, int(q)) for a, q in zip(nums, dens)))
        p = hull(pts, n)
        if not p.degenerate:
            return p
    raise GeometryError("could not draw a full-dimensional polytope")


__all__ = [
    "FacetData",
    "GeometryError",
    "Polytope",
    "Zonotope",
    "blaschke_sum",
    "box",
    "cube",
    "hull",
    "minkowski_combination",
    "minkowski_sum",
    "mixed_area",
    "mixed_area_support",
    "mixed_volume_inclusion_exclusion",
    "mixed_volume_polarization",
    "polygon_from_measure",
    "projection_body",
    "random_polytope",
    "safe_volume",
    "simplex",
    "surface_class",
    "volume",
    "volume_polynomial",
    "zonotope_mixed_volume",
]

