"""Seeded synthetic election generators.

RNG: numpy ``default_rng`` (PCG64). Election ``i`` of a batch draws from the
``i``-th child of ``SeedSequence(seed).spawn(count)``, so elections can be
built in any order. Within an election all per-candidate parameters are
drawn first, then scores row by row (candidates outer, positions inner).

Real values are rounded onto a 1e-6 grid before they become exact scores.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .model import Election, ElectionError

GRID = 10**6
MODELS = ("M1", "M2")


@dataclass(frozen=True)
class GenSpec:
    model: str
    m: int
    q: int
    count: int = 1
    seed: int = 0
    normalize: bool = True

    def __post_init__(self):
        model = self.model.upper()
        object.__setattr__(self, "model", model)
        if model not in MODELS:
            raise ValueError(f"unknown model {self.model!r}; expected M1 or M2")
        if self.q < 1 or self.m < self.q:
            raise ValueError(f"need m >= q >= 1, got m={self.m}, q={self.q}")
        if self.count < 1:
            raise ValueError("count must be at least 1")
        if model == "M1" and self.q < 3:
            raise ValueError("M1 needs at least 3 positions")


def _rngs(spec: GenSpec):
    return [np.random.default_rng(s) for s in np.random.SeedSequence(spec.seed).spawn(spec.count)]


def quantize(x: float) -> Fraction:
    return Fraction(int(round(float(x) * GRID)), GRID)


def _build(matrix, normalize: bool) -> Election:
    if normalize:
        top = float(np.max(matrix))
        if top <= 0:
            raise ElectionError("cannot normalise an election whose scores are all zero")
        matrix = matrix / top
    rows = [[quantize(x) for x in row] for row in matrix]
    e = Election.from_matrix(rows, _names("c", len(rows)), _names("p", len(rows[0])))
    # rounding can leave the maximum a hair off 1; renormalise exactly
    return normalize_election(e) if normalize else e


def _names(prefix, n):
    return [f"{prefix}{i + 1}" for i in range(n)]


def sample_m2_raw(rng: np.random.Generator, m: int, q: int) -> np.ndarray:
    """Unnormalised M2 scores: beta ~ N(mu_c, 0.05) clamped to [0, 1], raised to alpha_p."""
    mu = rng.uniform(0.4, 0.7, size=m)
    alpha = rng.uniform(1.0, 2.0, size=q)
    beta = rng.normal(mu[:, None], 0.05, size=(m, q))
    return np.clip(beta, 0.0, 1.0) ** alpha[None, :]


def position_blocks(q: int, parts: int = 3) -> list[range]:
    """Near-equal contiguous blocks; the first ``q % parts`` blocks get one extra position."""
    size, extra = divmod(q, parts)
    out, start = [], 0
    for i in range(parts):
        n = size + (1 if i < extra else 0)
        out.append(range(start, start + n))
        start += n
    return out


def sample_m1_raw(rng: np.random.Generator, m: int, q: int) -> np.ndarray:
    blocks = position_blocks(q)
    mu = rng.uniform(0.4, 0.7, size=(m, len(blocks)))
    means = np.empty((m, q))
    for b, cols in enumerate(blocks):
        means[:, cols.start:cols.stop] = mu[:, b:b + 1]
    return np.clip(rng.normal(means, 0.15), 0.0, 1.0)


def generate_m2(spec: GenSpec) -> list[Election]:
    if spec.model != "M2":
        raise ValueError("spec is not for M2")
    return [_build(sample_m2_raw(r, spec.m, spec.q), spec.normalize) for r in _rngs(spec)]


def generate_m1(spec: GenSpec) -> list[Election]:
    if spec.model != "M1":
        raise ValueError("spec is not for M1")
    return [_build(sample_m1_raw(r, spec.m, spec.q), spec.normalize) for r in _rngs(spec)]


def generate(spec: GenSpec) -> list[Election]:
    return generate_m1(spec) if spec.model == "M1" else generate_m2(spec)


def normalize_election(e: Election) -> Election:
    """Divide every score by the largest one."""
    top = max(max(row) for row in e.scores)
    if top <= 0:
        raise ElectionError("normalisation needs a positive maximum score")
    if top == 1:
        return e
    return e.scaled(1 / top)
