"""Signed discrete measures on facet-normal directions.

An entry ``(xi, w)`` stands for the point mass ``w * |xi|`` at the unit vector
``xi / |xi|``.  Directions are primitive integer vectors, so all stored data
stays rational.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .exact_scalar import RadicalScalar, as_fraction, fraction_str, radical_sqrt
from .linalg import line_direction, primitive


class MeasureError(ValueError):
    pass


@dataclass(frozen=True)
class WeightedDirections:
    ambient_dim: int
    entries: tuple[tuple[tuple[int, ...], Fraction], ...]

    @classmethod
    def from_pairs(cls, pairs, n: int | None = None) -> WeightedDirections:
        """Primitivize directions, fold scale into the weight, merge duplicates."""
        acc: dict[tuple[int, ...], Fraction] = {}
        for xi, w in pairs:
            w = as_fraction(w)
            if w == 0 or not any(xi):
                continue
            if n is None:
                n = len(xi)
            elif len(xi) != n:
                raise MeasureError(f"direction {tuple(xi)} is not in R^{n}")
            p, c = primitive(xi)
            acc[p] = acc.get(p, Fraction(0)) + w * c
        if n is None:
            raise MeasureError("ambient dimension of an empty measure must be given")
        return cls(n, tuple(sorted((p, w) for p, w in acc.items() if w != 0)))

    @classmethod
    def empty(cls, n: int) -> WeightedDirections:
        return cls(n, ())

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def as_dict(self) -> dict:
        return dict(self.entries)

    # invariants -----------------------------------------------------------
    def centroid(self) -> tuple[Fraction, ...]:
        out = [Fraction(0)] * self.ambient_dim
        for xi, w in self.entries:
            for i, x in enumerate(xi):
                out[i] += w * x
        return tuple(out)

    @property
    def centered(self) -> bool:
        return all(c == 0 for c in self.centroid())

    @property
    def symmetric(self) -> bool:
        d = self.as_dict()
        return all(d.get(tuple(-x for x in xi)) == w for xi, w in self.entries)

    def is_nonnegative(self) -> bool:
        return all(w > 0 for _, w in self.entries)

    def total_mass(self) -> RadicalScalar:
        return sum((radical_sqrt(sum(x * x for x in xi)) * w for xi, w in self.entries), RadicalScalar())

    def supported_on(self, lines) -> bool:
        allowed = {line_direction(l) for l in lines}
        return all(line_direction(xi) in allowed for xi, _ in self.entries)

    # linear structure -------------------------------------------------------
    def __add__(self, other: WeightedDirections) -> WeightedDirections:
        if other.ambient_dim != self.ambient_dim:
            raise MeasureError("ambient dimension mismatch")
        return WeightedDirections.from_pairs(self.entries + other.entries, self.ambient_dim)

    def __neg__(self) -> WeightedDirections:
        return WeightedDirections(self.ambient_dim, tuple((xi, -w) for xi, w in self.entries))

    def __sub__(self, other: WeightedDirections) -> WeightedDirections:
        return self + (-other)

    def scale(self, a) -> WeightedDirections:
        a = as_fraction(a)
        return WeightedDirections.from_pairs(((xi, w * a) for xi, w in self.entries), self.ambient_dim)

    def antipode(self) -> WeightedDirections:
        return WeightedDirections.from_pairs(
            ((tuple(-x for x in xi), w) for xi, w in self.entries), self.ambient_dim
        )

    def positive_part(self) -> WeightedDirections:
        return WeightedDirections(self.ambient_dim, tuple(e for e in self.entries if e[1] > 0))

    def negative_part(self) -> WeightedDirections:
        """Returned with positive weights: ``mu = positive_part - negative_part``."""
        return WeightedDirections(self.ambient_dim, tuple((xi, -w) for xi, w in self.entries if w < 0))

    # serialization ------------------------------------------------------------
    def to_json_obj(self) -> list:
        return [{"dir": list(xi), "weight": fraction_str(w)} for xi, w in self.entries]

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json_obj(cls, obj, n: int | None = None) -> WeightedDirections:
        return cls.from_pairs(((tuple(e["dir"]), Fraction(e["weight"])) for e in obj), n)

    @classmethod
    def from_json(cls, text: str, n: int | None = None) -> WeightedDirections:
        return cls.from_json_obj(json.loads(text), n)


def blaschke_sum(mu: WeightedDirections, nu: WeightedDirections) -> WeightedDirections:
    return mu + nu


def symmetric_from_lines(lines, weights, n: int) -> WeightedDirections:
    """Weight ``w`` on both ``+xi`` and ``-xi`` for each line."""
    pairs = []
    for xi, w in zip(lines, weights):
        pairs.append((tuple(xi), w))
        pairs.append((tuple(-x for x in xi), w))
    return WeightedDirections.from_pairs(pairs, n)
