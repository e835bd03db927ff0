"""Line arrangements and the lattice of subspaces spanned by their lines."""
from __future__ import annotations

import json
from dataclasses import dataclass, field

from .linalg import Subspace, canonicalize, line_direction, rank, subspace_sum, zero_subspace


class ArrangementError(ValueError):
    pass


@dataclass(frozen=True)
class LineArrangement:
    ambient_dim: int
    lines: tuple[tuple[int, ...], ...]

    @classmethod
    def from_vectors(cls, vectors, n: int | None = None) -> LineArrangement:
        vectors = [list(v) for v in vectors]
        if not vectors:
            raise ArrangementError("empty arrangement")
        n = len(vectors[0]) if n is None else n
        seen = set()
        for v in vectors:
            if len(v) != n:
                raise ArrangementError(f"line {v} does not live in R^{n}")
            if all(x == 0 for x in v):
                raise ArrangementError("zero vector does not span a line")
            d = line_direction(v)
            if d in seen:
                raise ArrangementError(f"parallel lines along {d}")
            seen.add(d)
        lines = tuple(sorted(seen))
        if rank([list(map(int, l)) for l in lines]) != n:
            raise ArrangementError("lines are contained in a hyperplane")
        return cls(n, lines)

    @classmethod
    def coordinate_axes(cls, n: int) -> LineArrangement:
        return cls.from_vectors([[int(i == j) for j in range(n)] for i in range(n)])

    def line_subspaces(self) -> list[Subspace]:
        return [canonicalize([l], self.ambient_dim) for l in self.lines]

    def to_json(self) -> str:
        return json.dumps([list(l) for l in self.lines])

    @classmethod
    def from_json(cls, text: str) -> LineArrangement:
        return cls.from_vectors(json.loads(text))

    def __len__(self) -> int:
        return len(self.lines)


@dataclass
class SubspaceLattice:
    arrangement: LineArrangement
    levels: list[list[Subspace]]
    witnesses: dict[Subspace, tuple[int, ...]] = field(default_factory=dict)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(level) for level in self.levels)

    def index(self, k: int) -> dict[Subspace, int]:
        return {s: i for i, s in enumerate(self.levels[k])}


def build_lattice(arr: LineArrangement) -> SubspaceLattice:
    """Breadth-first closure ``L_{k+1} = {M + l : M in L_k, l not in M}``.

    Each level is sorted by RREF basis.  ``witnesses`` records one set of
    line indices spanning each member.
    """
    n = arr.ambient_dim
    lines = arr.line_subspaces()
    zero = zero_subspace(n)
    levels = [[zero]]
    witnesses: dict[Subspace, tuple[int, ...]] = {zero: ()}
    for k in range(n):
        nxt: dict[Subspace, tuple[int, ...]] = {}
        for m in levels[k]:
            for i, l in enumerate(lines):
                if m.contains(arr.lines[i]):
                    continue
                s = subspace_sum(m, l)
                if s not in nxt:
                    nxt[s] = witnesses[m] + (i,)
        witnesses.update(nxt)
        levels.append(sorted(nxt))
    if levels[n] != [canonicalize([[int(i == j) for j in range(n)] for i in range(n)], n)]:
        raise ArrangementError("arrangement does not span")
    return SubspaceLattice(arr, levels, witnesses)


def dowling_wilson_profile(lattice: SubspaceLattice) -> dict:
    sizes = lattice.sizes
    n = len(sizes) - 1
    pairs = []
    for k in range(n // 2 + 1):
        pairs.append({"k": k, "low": sizes[k], "high": sizes[n - k], "holds": sizes[k] <= sizes[n - k]})
    return {"sizes": list(sizes), "pairs": pairs, "holds": all(p["holds"] for p in pairs)}


def random_arrangement(rng, n: int, count: int, bound: int = 5, max_tries: int = 10000) -> LineArrangement:
    """Draw ``count`` pairwise non-parallel spanning lines with entries in [-bound, bound]."""
    if count < n:
        raise ArrangementError("need at least n lines to span")
    for _ in range(max_tries):
        dirs: list[tuple[int, ...]] = []
        seen = set()
        tries = 0
        while len(dirs) < count and tries < 100 * count:
            tries += 1
            v = [int(x) for x in rng.integers(-bound, bound + 1, size=n)]
            if not any(v):
                continue
            d = line_direction(v)
            if d in seen:
                continue
            seen.add(d)
            dirs.append(d)
        if len(dirs) == count and rank([list(d) for d in dirs]) == n:
            return LineArrangement.from_vectors(dirs, n)
    raise ArrangementError("could not draw a spanning arrangement")
