"""Brute-force evaluators used to pin normalizations of the fast pipelines.

``chi_product_oracle`` reads the top-degree product of ``n`` degree-one
classes off a volume polynomial in ``R^{n(n-1)}``: the bodies are placed by
``(y, p_2, ..., p_n) -> (y - p_2, ..., y - p_n)`` and the coefficient of
``prod l_i^(n-1)`` is isolated by an order-``(n-1)`` forward difference in
every variable.  ``wtV_definitional`` does the same with the orthogonal
projection to the complement of the diagonal and Lebesgue measure there.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .arrangement import LineArrangement
from .exact_scalar import RadicalScalar, radical_sqrt
from .polytope_geom import (
    Polytope,
    box,
    cube,
    hull,
    minkowski_combination,
    mixed_volume_polarization,
    projection_body,
    safe_volume,
    simplex,
    surface_class,
    zonotope_mixed_volume,
)
from .degree_one import line_kernel, pair_top
from .sym_algebra import SymAlgebra, ell_symmetric

log = logging.getLogger(__name__)

MAX_ORACLE_VERTICES = 8


class OracleError(ValueError):
    pass


def _guard(bodies) -> int:
    n = len(bodies)
    if n not in (2, 3):
        raise OracleError("oracles support n = 2 and n = 3 only")
    for b in bodies:
        if b.ambient_dim != n:
            raise OracleError(f"body does not live in R^{n}")
        if n == 3 and len(b.vertices) > MAX_ORACLE_VERTICES:
            raise OracleError(f"size guard: more than {MAX_ORACLE_VERTICES} vertices")
    return n


def _difference_coefficient(images, n: int) -> Fraction:
    """Coefficient of ``prod l_i^(n-1)`` in ``vol(sum l_i A_i)``."""
    dim = n * (n - 1)
    k = n - 1
    total = Fraction(0)
    for lam in product(range(k + 1), repeat=n):
        sign = (-1) ** (n * k - sum(lam))
        weight = math.prod(math.comb(k, a) for a in lam)
        vol = safe_volume(minkowski_combination(images, lam, dim))
        total += sign * weight * vol
    return total / math.factorial(k) ** n


def _chi_images(bodies, n: int):
    images = []
    for i, body in enumerate(bodies):
        pts = []
        for p in body.vertices:
            if i == 0:
                pts.append(tuple(x for _ in range(n - 1) for x in p))
            else:
                v = [Fraction(0)] * (n * (n - 1))
                for j in range(n):
                    v[(i - 1) * n + j] = -p[j]
                pts.append(tuple(v))
        images.append(hull(pts, n * (n - 1)))
    return images


def chi_product_oracle(bodies) -> Fraction:
    """Top-degree value of ``l_{P_1} ... l_{P_n}`` by polarization in ``R^{n(n-1)}``."""
    n = _guard(bodies)
    return _difference_coefficient(_chi_images(bodies, n), n)


def _diagonal_complement_images(bodies, n: int):
    # coordinates c_j = x_j - mean(x), j < n, on the complement of the diagonal
    images = []
    for i, body in enumerate(bodies):
        pts = []
        for p in body.vertices:
            v = []
            for j in range(n - 1):
                f = Fraction(int(i == j)) - Fraction(1, n)
                v.extend(f * x for x in p)
            pts.append(tuple(v))
        images.append(hull(pts, n * (n - 1)))
    return images


def wtV_definitional(bodies) -> RadicalScalar:
    """Higher-rank mixed volume with Lebesgue measure on the diagonal complement.

    The chart ``x -> (x_j - mean(x))_{j<n}`` has Jacobian ``n^(n/2)`` against
    that measure, which is the only irrational factor.
    """
    n = _guard(bodies)
    coeff = _difference_coefficient(_diagonal_complement_images(bodies, n), n)
    return radical_sqrt(Fraction(n**n)) * coeff


# ---------------------------------------------------------------------------
# the fast routes, keyed by name


def _symmetric_setup(bodies):
    n = bodies[0].ambient_dim
    dirs = set()
    for b in bodies:
        for f in b.facets:
            first = next(x for x in f.normal if x)
            dirs.add(f.normal if first > 0 else tuple(-x for x in f.normal))
    arr = LineArrangement.from_vectors(sorted(dirs), n)
    alg = SymAlgebra(arr)
    return arr, alg, [ell_symmetric(b, alg) for b in bodies]


def sym_route(bodies) -> RadicalScalar:
    _, alg, ells = _symmetric_setup(bodies)
    return RadicalScalar.coerce(alg.top_evaluate(alg.product(ells)))


def pair_top_route(bodies) -> RadicalScalar:
    """First two bodies arbitrary, the rest centrally symmetric."""
    n = bodies[0].ambient_dim
    rest = bodies[2:]
    if rest:
        _, alg, ells = _symmetric_setup(rest)
        s = alg.product(ells)
    else:
        s = SymAlgebra(LineArrangement.coordinate_axes(n)).unit()
    return pair_top(surface_class(bodies[0]), surface_class(bodies[1]), s)


def kernel_route(bodies) -> Fraction:
    arr, _, _ = _symmetric_setup(bodies)
    weights = []
    for b in bodies:
        d = {f.normal: f.weight for f in b.facets}
        weights.append([d.get(l, Fraction(0)) for l in arr.lines])
    return line_kernel(weights, arr.lines)


def zonotope_route(bodies) -> Fraction:
    return zonotope_mixed_volume([projection_body(b) for b in bodies])


def polarization_route(bodies) -> Fraction:
    return mixed_volume_polarization([projection_body(b).to_polytope() for b in bodies])


ROUTES = {
    "sym": sym_route,
    "pair_top": pair_top_route,
    "kernel": kernel_route,
    "zonotope": zonotope_route,
    "polarization": polarization_route,
    "chi": chi_product_oracle,
    "wtV": wtV_definitional,
}

# (numerator route, denominator route, needs every body symmetric)
PAIRS = [
    ("sym", "chi", True),
    ("pair_top", "chi", False),
    ("kernel", "sym", True),
    ("zonotope", "kernel", True),
    ("zonotope", "chi", True),
    ("polarization", "zonotope", True),
    ("chi", "wtV", False),
]


def _sheared_box(n: int) -> Polytope:
    gens = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    gens[0][1] = Fraction(1)
    if n >= 3:
        gens[2][0] = Fraction(1, 2)
    pts = []
    for signs in product((-1, 1), repeat=n):
        pts.append(tuple(sum(s * g[j] for s, g in zip(signs, gens)) / 2 for j in range(n)))
    return hull(pts, n)


def reference_battery(n: int) -> list[tuple[str, list[Polytope]]]:
    """Fixed instances: boxes, sheared boxes, and simplices in the free slots."""
    c = cube(n)
    b = box([1, 2, 3][:n])
    sh = _sheared_box(n)
    s = simplex(n)
    corners = [(0, 0, 0), (2, 0, 0), (-1, 1, 0), (1, 0, 1)][: n + 1]
    t = hull([tuple(Fraction(x) for x in v[:n]) for v in corners], n)
    if n == 2:
        return [
            ("cube^2", [c, c]),
            ("box,sheared", [b, sh]),
            ("sheared^2", [sh, sh]),
            ("simplex,cube", [s, c]),
            ("simplex,simplex2", [s, t]),
        ]
    return [
        ("cube^3", [c, c, c]),
        ("box,sheared,cube", [b, sh, c]),
        ("simplex,cube,cube", [s, c, c]),
        ("simplex,simplex2,box", [s, t, b]),
    ]


@dataclass
class CalibrationRecord:
    n: int
    numerator: str
    denominator: str
    ratio: RadicalScalar | None
    instances: list[str] = field(default_factory=list)
    values: list[tuple[str, str]] = field(default_factory=list)
    status: str = "OK"

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "pipelines": [self.numerator, self.denominator],
            "ratio": None if self.ratio is None else str(self.ratio),
            "ratio_decimal": None if self.ratio is None else self.ratio.to_decimal(12),
            "instances": self.instances,
            "values": [list(v) for v in self.values],
            "status": self.status,
        }


def oracle_calibrate(n: int, battery=None) -> list[CalibrationRecord]:
    """Run every route on the battery and measure pairwise ratios."""
    battery = reference_battery(n) if battery is None else battery
    cache: dict[tuple[str, str], RadicalScalar] = {}
    for name, bodies in battery:
        symmetric = all(surface_class(b).symmetric for b in bodies)
        tail_sym = all(surface_class(b).symmetric for b in bodies[2:])
        for route, fn in ROUTES.items():
            if route in ("sym", "kernel", "zonotope", "polarization") and not symmetric:
                continue
            if route == "pair_top" and not tail_sym:
                continue
            log.info("calibrate n=%d %s %s", n, name, route)
            cache[(name, route)] = RadicalScalar.coerce(fn(bodies))
    records = []
    for num, den, needs_sym in PAIRS:
        rec = CalibrationRecord(n, num, den, None)
        ratios = []
        for name, _ in battery:
            if (name, num) not in cache or (name, den) not in cache:
                continue
            a, b = cache[(name, num)], cache[(name, den)]
            rec.instances.append(name)
            rec.values.append((str(a), str(b)))
            if b.is_zero():
                rec.status = "FAILED"
                continue
            ratios.append(a / b)
        if not ratios or any(r != ratios[0] for r in ratios):
            rec.status = "FAILED"
        rec.ratio = ratios[0] if ratios and rec.status == "OK" else None
        records.append(rec)
    return records


def render_constants_module(records_by_n: dict[int, list[CalibrationRecord]]) -> str:
    lines = [
        '"""Measured ratios between evaluation routes, per ambient dimension.',
        "",
        "Generated by ``polyalg oracle-calibrate --write-constants``.  Each entry",
        "maps (numerator route, denominator route) to the exact ratio observed on",
        "every instance of the reference battery.",
        '"""',
        "from __future__ import annotations",
        "",
        "CONSTANTS: dict[int, dict[tuple[str, str], str]] = {",
    ]
    for n, recs in sorted(records_by_n.items()):
        lines.append(f"    {n}: {{")
        for r in recs:
            lines.append(f"        # {r.status}; measured numerator/denominator per instance:")
            for name, (a, b) in zip(r.instances, r.values):
                lines.append(f"        #   {name}: {a} / {b}")
            lines.append(f"        ({r.numerator!r}, {r.denominator!r}): {str(r.ratio)!r},")
        lines.append("    },")
    lines.append("}")
    return "\n".join(lines) + "\n"


def stored_constant(n: int, numerator: str, denominator: str) -> RadicalScalar:
    from .calibration_constants import CONSTANTS

    try:
        return RadicalScalar.parse(CONSTANTS[n][(numerator, denominator)])
    except KeyError as exc:
        raise OracleError(f"no stored constant for {numerator}/{denominator} at n={n}") from exc


def check_against_stored(records: list[CalibrationRecord]) -> list[dict]:
    out = []
    for r in records:
        try:
            want = stored_constant(r.n, r.numerator, r.denominator)
        except OracleError:
            want = None
        ok = r.status == "OK" and want is not None and r.ratio == want
        out.append({"pipelines": [r.numerator, r.denominator], "stored": str(want), "measured": str(r.ratio), "agrees": ok})
    return out
