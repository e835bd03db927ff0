"""Acceptance checks, one PASS/FAIL line each.

Under pytest the lines are printed in the terminal summary; run this file
directly (``python3 tests/test_acceptance.py``) to get only the lines.
Each check also enforces its wall-clock budget.
"""
from __future__ import annotations

import math
import sys
import time
from fractions import Fraction

import pytest

from polyalg import harness
from polyalg.arrangement import LineArrangement, random_arrangement
from polyalg.degree_one import DegreeOneSpace, naive_line_kernel, pair_top, restriction_rank
from polyalg.linalg import canonicalize
from polyalg.oracles import kernel_route, polarization_route, stored_constant, zonotope_route
from polyalg.polytope_geom import Zonotope, box, cube, minkowski_sum, random_polytope, simplex, surface_class
from polyalg.rng import substream
from polyalg.sym_algebra import SymAlgebra, axes_isomorphic, cube_element, ell_symmetric

RESULTS: dict[int, tuple[str, bool, str]] = {}


def _record(num: int, title: str, budget: float, check) -> tuple[bool, str]:
    start = time.perf_counter()
    ok, detail = check()
    elapsed = time.perf_counter() - start
    in_time = elapsed < budget
    detail = f"{detail}; {elapsed:.1f}s of {budget:.0f}s budget"
    if not in_time:
        detail += " (over budget)"
    RESULTS[num] = (title, ok and in_time, detail)
    return ok and in_time, detail


def summary_lines() -> list[str]:
    out = []
    for num in sorted(RESULTS):
        title, ok, detail = RESULTS[num]
        out.append(f"acceptance {num:>2} {'PASS' if ok else 'FAIL'}  {title}: {detail}")
    return out


def _run(cfg: dict) -> tuple[dict, int]:
    return harness.run(harness.validate_config(cfg))


# ---------------------------------------------------------------------------


def axes_exactness():
    bad = []
    for n in range(2, 7):
        alg = SymAlgebra(LineArrangement.coordinate_axes(n))
        if [alg.dim(k) for k in range(n + 1)] != [math.comb(n, k) for k in range(n + 1)]:
            bad.append(f"dims n={n}")
        c = cube_element(alg)
        if alg.top_evaluate(alg.product([c] * n)) != math.factorial(n):
            bad.append(f"cube power n={n}")
        if not axes_isomorphic(n):
            bad.append(f"tables n={n}")
    return not bad, "n = 2..6 dims, n!, tables" + (f"; failed {bad}" if bad else " all exact")


def _symmetric_body(rng, n):
    g = n + int(rng.integers(0, 2))
    while True:
        gens = [tuple(Fraction(int(x), int(rng.integers(1, 3))) for x in rng.integers(-2, 3, size=n)) for _ in range(g)]
        p = Zonotope.from_generators(gens, n).to_polytope()
        if not p.degenerate:
            return p


def route_agreement():
    bad = []
    for n in (2, 3):
        czk = stored_constant(n, "zonotope", "kernel")
        cpz = stored_constant(n, "polarization", "zonotope")
        for i in range(25):
            rng = substream(i, f"acceptance/routes/{n}")
            bodies = [_symmetric_body(rng, n) for _ in range(n)]
            k, z, p = kernel_route(bodies), zonotope_route(bodies), polarization_route(bodies)
            if z != czk * k or p != cpz * z:
                bad.append((n, i, str(k), str(z), str(p)))
    return not bad, "50 symmetric instances, kernel/zonotope/polarization" + (f"; mismatches {bad[:3]}" if bad else " agree with stored constants")


def plane_identity():
    unit = SymAlgebra(LineArrangement.coordinate_axes(2)).unit()
    bad = 0
    for i in range(50):
        rng = substream(i, "acceptance/plane")
        p, q = random_polytope(rng, 2), random_polytope(rng, 2)
        lhs = pair_top(surface_class(p), surface_class(q), unit)
        rhs = minkowski_sum(p, -q).volume() - p.volume() - q.volume()
        bad += lhs != rhs
    return bad == 0, f"50 polygon pairs, {bad} mismatches"


def cross_pipeline_boxes():
    alg = SymAlgebra(LineArrangement.coordinate_axes(3))
    x3 = alg.x(canonicalize([[0, 0, 1]], 3))
    sc = surface_class(cube(3))
    anchor = pair_top(sc, sc, x3)
    ok = anchor == 2 and alg.top_evaluate(cube_element(alg) * cube_element(alg) * x3) == 2
    bad = 0
    for i in range(10):
        rng = substream(i, "acceptance/boxes")
        p, q, r = (box([Fraction(int(rng.integers(1, 6)), int(rng.integers(1, 4))) for _ in range(3)]) for _ in range(3))
        ep, eq, er = (ell_symmetric(b, alg) for b in (p, q, r))
        bad += pair_top(surface_class(p), surface_class(q), er) != alg.top_evaluate(ep * eq * er)
    tri = surface_class(simplex(2))
    naive = naive_line_kernel(tri, tri)
    correct = pair_top(tri, tri, SymAlgebra(LineArrangement.coordinate_axes(2)).unit())
    discrepancy = naive == Fraction(3, 2) and correct == 2
    ok = ok and bad == 0 and discrepancy
    return ok, f"cube with x_e3 = {anchor}, 10 box triples {bad} mismatches, triangle naive {naive} vs {correct}"


def af_fuzz():
    report, code = _run(
        {
            "command": "af-fuzz",
            "n": [3, 4],
            "lines": {"random": {"count": [4, 5], "bound": 3}},
            "reference": "zonotope_from_lines",
            "trials": 200,
            "seed": 2024,
        }
    )
    s = report["summary"]
    ok = code == 0 and s["counts"] == {"pass": 200}
    return ok, f"200 instances, counts {s['counts']}, violations {s['violations']}"


def hr_degree_one():
    report, code = _run(
        {
            "command": "hodge-riemann",
            "n": [3, 4],
            "k": 1,
            "lines": {"random": {"count": [4, 7], "bound": 3}},
            "trials": 50,
            "seed": 77,
        }
    )
    bad, redraws = [], 0
    for r in report["results"]:
        d = r.get("degree_one", {})
        redraws += len(d.get("hypothesis_failures", []))
        dim = 2 * len(r["lines"]) - r["n"] - 1
        if r["verdict"] != "pass" or d.get("signature") != [dim, 0, 0] or d.get("primitive_dim") != dim:
            bad.append(r["trial"])
    ok = code == 0 and not bad and len(report["results"]) == 50
    return ok, f"50 arrangements, definite in {50 - len(bad)}, hypothesis re-draws {redraws}" + (f", failing trials {bad}" if bad else "")


def restriction_determinacy():
    bad = []
    for i in range(25):
        rng = substream(i, "acceptance/restriction")
        n = 3 + i % 2
        arr = random_arrangement(rng, n, n + 1 + int(rng.integers(0, 4)), 3)
        r = restriction_rank(DegreeOneSpace.of(arr))
        if r != 2 * len(arr.lines) - n:
            bad.append((i, r))
    return not bad, "25 arrangements, rank 2|E| - n" + (f"; failures {bad}" if bad else " in all")


def dowling_wilson():
    report, code = _run(
        {
            "command": "lattice",
            "n": [3, 4, 5],
            "lines": {"random": {"count": [5, 9], "bound": 4}},
            "trials": 100,
            "seed": 8,
        }
    )
    s = report["summary"]
    ok = code == 0 and s["counts"] == {"pass": 100}
    return ok, f"100 arrangements, counts {s['counts']}"


def property_suite():
    import test_properties as tp

    names = [n for n in dir(tp) if n.startswith("test_")]
    failed = []
    for name in names:
        try:
            getattr(tp, name)()
        except Exception as exc:  # report, keep going
            failed.append(f"{name}: {type(exc).__name__}")
    return not failed, f"{len(names)} properties x 100 cases" + (f"; failed {failed}" if failed else " exact")


def k2_exploration():
    cfg = {"n": [4, 5], "k": 2, "lines": {"random": {"count": [4, 10], "bound": 3}}, "trials": 8, "seed": 31}
    lef, c1 = _run({**cfg, "command": "lefschetz"})
    hr, c2 = _run({**cfg, "command": "hodge-riemann"})
    consistent = all(l["consistent"] for r in hr["results"] for l in r["levels"])
    complete = len(lef["results"]) == len(hr["results"]) == 8 and c1 == 0 and c2 == 0
    ranks = [(r["n"], len(r["lines"]), l["rank"], l["dim_k"]) for r in lef["results"] for l in r["levels"]]
    sigs = [tuple(l["primitive_signature"]) for r in hr["results"] for l in r["levels"]]
    same_rank = all(
        a["levels"][0]["rank"] == b["levels"][0]["lefschetz_rank"] for a, b in zip(lef["results"], hr["results"])
    )
    ok = complete and consistent and same_rank
    return ok, f"8 arrangements, ranks (n,|E|,rank,dim) {ranks}, primitive signatures {sigs}, consistent {consistent and same_rank}"


CHECKS = [
    (1, "axes exactness", 5, axes_exactness),
    (2, "kernel/zonotope/polarization agreement", 60, route_agreement),
    (3, "plane pairing identity", 10, plane_identity),
    (4, "three-dimensional cross-pipeline and triangle discrepancy", 10, cross_pipeline_boxes),
    (5, "Alexandrov-Fenchel fuzz", 600, af_fuzz),
    (6, "Hodge-Riemann in degree one", 600, hr_degree_one),
    (7, "restriction determinacy", 120, restriction_determinacy),
    (8, "Dowling-Wilson top-heaviness", 120, dowling_wilson),
    (9, "algebraic property suite", 120, property_suite),
    (10, "degree-two Lefschetz/Hodge-Riemann exploration", 1800, k2_exploration),
]


@pytest.mark.parametrize("num, title, budget, check", CHECKS, ids=[c[1].replace(" ", "_") for c in CHECKS])
def test_acceptance(num, title, budget, check):
    ok, detail = _record(num, title, budget, check)
    print(summary_lines()[-1] if RESULTS else "")
    assert ok, detail


if __name__ == "__main__":
    import os

    sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))
    import conftest  # noqa: F401  (hypothesis profile)
    for num, title, budget, check in CHECKS:
        _record(num, title, budget, check)
        print([l for l in summary_lines() if l.startswith(f"acceptance {num:>2} ")][0], flush=True)
    sys.exit(0 if all(ok for _, ok, _ in RESULTS.values()) else 1)
