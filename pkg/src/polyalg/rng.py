"""Named, platform-independent random substreams.

Every random object is drawn from ``substream(seed, name)``: a PCG64
generator seeded by the pair (seed, 64-bit digest of the name).  Adding a new
name never shifts the draws of existing ones.
"""
from __future__ import annotations

import hashlib
from fractions import Fraction

import numpy as np


def _name_key(name: str) -> int:
    return int.from_bytes(hashlib.sha256(name.encode("utf-8")).digest()[:8], "little")


def substream(seed: int, name: str) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([int(seed), _name_key(name)])))


def positive_rational(rng: np.random.Generator, max_num: int = 5, max_den: int = 4) -> Fraction:
    return Fraction(int(rng.integers(1, max_num + 1)), int(rng.integers(1, max_den + 1)))


def small_rational(rng: np.random.Generator, bound: int = 5, max_den: int = 3) -> Fraction:
    return Fraction(int(rng.integers(-bound, bound + 1)), int(rng.integers(1, max_den + 1)))
