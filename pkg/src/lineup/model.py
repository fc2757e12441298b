"""Core types for line-up elections.

An election is a set of candidates, an ordered set of positions and an exact
rational score for every candidate-position pair. A line-up assigns one
distinct candidate to every position. Rules return :class:`WinnerSet`
objects holding every (tied) winning line-up.

All scores are :class:`fractions.Fraction`; nothing in the rule layer ever
touches binary floating point.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator, Sequence, Union

ScoreLike = Union[int, str, Fraction]


class ElectionError(ValueError):
    """Raised for malformed election documents or invalid line-ups."""


def parse_score(value, where: str = "") -> Fraction:
    """Convert an integer, ``"n/d"`` string or decimal string to a Fraction.

    Decimal strings are read as exact fractions over powers of ten. Binary
    floats are rejected because they are rarely the number the user meant.
    """
    loc = f" at {where}" if where else ""
    if isinstance(value, bool):
        raise ElectionError(f"boolean is not a score{loc}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        raise ElectionError(f"binary float {value!r} is not an exact score{loc}; use a string")
    if isinstance(value, str):
        text = value.strip()
        try:
            result = Fraction(text)
        except (ValueError, ZeroDivisionError):
            raise ElectionError(f"unparsable number {value!r}{loc}") from None
        return result
    raise ElectionError(f"unsupported score type {type(value).__name__}{loc}")


def format_score(x: Fraction) -> str:
    """Exact string form: ``"3"``, ``"-1/2"``."""
    return str(x)


class LineUp(tuple):
    """Tuple of candidate identifiers, one per position in position order.

    Entries must be pairwise distinct; membership in a particular election is
    checked by :meth:`Election.validate_lineup`.
    """

    __slots__ = ()

    def __new__(cls, assignment: Iterable[str]):
        items = tuple(assignment)
        if len(set(items)) != len(items):
            raise ElectionError(f"line-up {items!r} assigns a candidate twice")
        return super().__new__(cls, items)

    def __repr__(self) -> str:
        return "LineUp(" + ",".join(self) + ")"


@dataclass(frozen=True)
class Election:
    candidates: tuple[str, ...]
    positions: tuple[str, ...]
    scores: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        cands = tuple(self.candidates)
        poss = tuple(self.positions)
        object.__setattr__(self, "candidates", cands)
        object.__setattr__(self, "positions", poss)
        if len(set(cands)) != len(cands):
            dup = _first_duplicate(cands)
            raise ElectionError(f"duplicate candidate identifier {dup!r}")
        if len(set(poss)) != len(poss):
            dup = _first_duplicate(poss)
            raise ElectionError(f"duplicate position identifier {dup!r}")
        if not poss:
            raise ElectionError("an election needs at least one position")
        if len(self.scores) != len(cands):
            raise ElectionError(
                f"dimension mismatch: {len(cands)} candidates but {len(self.scores)} score rows"
            )
        rows = []
        for i, row in enumerate(self.scores):
            row = tuple(row)
            if len(row) != len(poss):
                raise ElectionError(
                    f"dimension mismatch in row {i + 1} ({cands[i]}): "
                    f"{len(row)} scores for {len(poss)} positions"
                )
            rows.append(tuple(parse_score(x, f"row {i + 1}, column {j + 1}") for j, x in enumerate(row)))
        object.__setattr__(self, "scores", tuple(rows))
        if len(cands) < len(poss):
            raise ElectionError(f"m < q: {len(cands)} candidates for {len(poss)} positions")

    @classmethod
    def from_matrix(cls, matrix: Sequence[Sequence[ScoreLike]], candidates=None, positions=None) -> "Election":
        """Build an election from a score matrix, naming candidates a, b, ... by default."""
        m = len(matrix)
        q = len(matrix[0]) if m else 0
        if candidates is None:
            candidates = default_candidate_names(m)
        if positions is None:
            positions = tuple(f"p{j + 1}" for j in range(q))
        return cls(tuple(candidates), tuple(positions), tuple(tuple(parse_score(x) for x in row) for row in matrix))

    @property
    def m(self) -> int:
        return len(self.candidates)

    @property
    def q(self) -> int:
        return len(self.positions)

    @cached_property
    def candidate_index(self) -> dict[str, int]:
        return {c: i for i, c in enumerate(self.candidates)}

    @cached_property
    def position_index(self) -> dict[str, int]:
        return {p: j for j, p in enumerate(self.positions)}

    @cached_property
    def int_matrix(self) -> tuple[tuple[tuple[int, ...], ...], int]:
        """Scores scaled to integers by the common denominator, plus that denominator."""
        den = 1
        for row in self.scores:
            for x in row:
                den = den * x.denominator // math.gcd(den, x.denominator)
        mat = tuple(tuple(int(x * den) for x in row) for row in self.scores)
        return mat, den

    def score(self, candidate: str, position: str) -> Fraction:
        return self.scores[self.candidate_index[candidate]][self.position_index[position]]

    def column(self, position: str) -> tuple[Fraction, ...]:
        j = self.position_index[position]
        return tuple(row[j] for row in self.scores)

    def validate_lineup(self, lu: Sequence[str]) -> LineUp:
        lu = lu if isinstance(lu, LineUp) else LineUp(lu)
        if len(lu) != self.q:
            raise ElectionError(f"line-up has {len(lu)} entries for {self.q} positions")
        for c in lu:
            if c not in self.candidate_index:
                raise ElectionError(f"unknown candidate {c!r} in line-up")
        return lu

    def lineup_from_indices(self, idx: Sequence[int]) -> LineUp:
        return LineUp(self.candidates[i] for i in idx)

    def lineup_indices(self, lu: Sequence[str]) -> tuple[int, ...]:
        return tuple(self.candidate_index[c] for c in lu)

    def with_scores(self, scores) -> "Election":
        return Election(self.candidates, self.positions, scores)

    def replace_score(self, candidate: str, position: str, value: ScoreLike) -> "Election":
        i, j = self.candidate_index[candidate], self.position_index[position]
        rows = [list(r) for r in self.scores]
        rows[i][j] = parse_score(value)
        return self.with_scores(tuple(tuple(r) for r in rows))

    def __add__(self, other: "Election") -> "Election":
        if self.candidates != other.candidates or self.positions != other.positions:
            raise ElectionError("elections must share candidates and positions to be added")
        return self.with_scores(
            tuple(tuple(a + b for a, b in zip(r1, r2)) for r1, r2 in zip(self.scores, other.scores))
        )

    def scaled(self, factor: ScoreLike) -> "Election":
        f = parse_score(factor)
        return self.with_scores(tuple(tuple(x * f for x in row) for row in self.scores))

    def with_position(self, name: str, column: Sequence[ScoreLike], index: int | None = None) -> "Election":
        """Insert a new position (default: last) with the given score column."""
        if len(column) != self.m:
            raise ElectionError(f"new column has {len(column)} scores for {self.m} candidates")
        if name in self.position_index:
            raise ElectionError(f"position {name!r} already exists")
        k = self.q if index is None else index
        col = [parse_score(x) for x in column]
        rows = [tuple(row[:k]) + (col[i],) + tuple(row[k:]) for i, row in enumerate(self.scores)]
        poss = self.positions[:k] + (name,) + self.positions[k:]
        return Election(self.candidates, poss, tuple(rows))


def _first_duplicate(items):
    seen = set()
    for x in items:
        if x in seen:
            return x
        seen.add(x)
    return None


def default_candidate_names(m: int) -> tuple[str, ...]:
    letters = "abcdefghijklmnopqrstuvwxyz"
    if m <= len(letters):
        return tuple(letters[:m])
    return tuple(f"c{i + 1}" for i in range(m))


def canonical_key(e: Election):
    """Sort key putting line-ups in candidate-index lexicographic order."""
    idx = e.candidate_index
    return lambda lu: tuple(idx[c] for c in lu)


@dataclass(frozen=True)
class WinnerSet:
    """Tied winning line-ups of a rule, in canonical order.

    ``objective`` is the optimal rule value for optimisation rules and ``None``
    for sequential rules. ``truncated`` is set when enumeration hit the cap.
    """

    lineups: tuple[LineUp, ...]
    objective: Fraction | None = None
    truncated: bool = False
    _members: frozenset = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "lineups", tuple(self.lineups))
        object.__setattr__(self, "_members", frozenset(self.lineups))
        if not self.lineups:
            raise ElectionError("a winner set is never empty")

    def __contains__(self, lu) -> bool:
        return tuple(lu) in self._members

    def __iter__(self) -> Iterator[LineUp]:
        return iter(self.lineups)

    def __len__(self) -> int:
        return len(self.lineups)

    def as_set(self) -> frozenset:
        return self._members

    @property
    def first(self) -> LineUp:
        return self.lineups[0]


def score_vector(e: Election, lu: Sequence[str]) -> tuple[Fraction, ...]:
    """Scores of the assigned candidates, in position order."""
    lu = e.validate_lineup(lu)
    ci = e.candidate_index
    return tuple(e.scores[ci[c]][j] for j, c in enumerate(lu))


def restrict(e: Election, subset: Iterable[str]) -> Election:
    """Keep only the given positions (original order preserved)."""
    wanted = set(subset)
    if not wanted:
        raise ElectionError("cannot restrict to an empty position subset")
    unknown = wanted - set(e.positions)
    if unknown:
        raise ElectionError(f"unknown position(s) {sorted(unknown)!r}")
    cols = [j for j, p in enumerate(e.positions) if p in wanted]
    return Election(
        e.candidates,
        tuple(e.positions[j] for j in cols),
        tuple(tuple(row[j] for j in cols) for row in e.scores),
    )


def restrict_lineup(e: Election, lu: Sequence[str], subset: Iterable[str]) -> LineUp:
    wanted = set(subset)
    return LineUp(c for p, c in zip(e.positions, lu) if p in wanted)


# --------------------------------------------------------------------------
# serialization


def election_to_dict(e: Election) -> dict:
    return {
        "candidates": list(e.candidates),
        "positions": list(e.positions),
        "scores": [[format_score(x) for x in row] for row in e.scores],
    }


def dump_election(e: Election) -> str:
    return json.dumps(election_to_dict(e), ensure_ascii=False)


def election_from_dict(doc) -> Election:
    if not isinstance(doc, dict):
        raise ElectionError("election document must be a JSON object")
    for key in ("candidates", "positions", "scores"):
        if key not in doc:
            raise ElectionError(f"missing key {key!r}")
    cands, poss, scores = doc["candidates"], doc["positions"], doc["scores"]
    if not isinstance(scores, list) or not all(isinstance(r, list) for r in scores):
        raise ElectionError("scores must be a list of rows")
    for name in list(cands) + list(poss):
        if not isinstance(name, str):
            raise ElectionError(f"identifier {name!r} is not a string")
    return Election(tuple(cands), tuple(poss), tuple(tuple(r) for r in scores))


def parse_election(text: str) -> Election:
    """Parse a JSON election document or a CSV score matrix.

    JSON: ``{"candidates": [...], "positions": [...], "scores": [[...], ...]}``
    with scores given as integers or strings (``"2"``, ``"4.75"``, ``"3/4"``).
    CSV: header row of position names (first cell is a label), then one row per
    candidate starting with its name.
    """
    stripped = text.lstrip("﻿").strip()
    if stripped.startswith("{"):
        try:
            doc = json.loads(stripped, parse_float=str)
        except json.JSONDecodeError as exc:
            raise ElectionError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
        return election_from_dict(doc)
    return _parse_csv(stripped)


def _parse_csv(text: str) -> Election:
    rows = [r for r in csv.reader(io.StringIO(text)) if r]
    if len(rows) < 2:
        raise ElectionError("CSV election needs a header row and at least one candidate row")
    positions = tuple(h.strip() for h in rows[0][1:])
    cands, scores = [], []
    for lineno, row in enumerate(rows[1:], start=2):
        if len(row) - 1 != len(positions):
            raise ElectionError(f"dimension mismatch on line {lineno}: expected {len(positions)} scores")
        cands.append(row[0].strip())
        scores.append(tuple(parse_score(x, f"line {lineno}, column {j + 2}") for j, x in enumerate(row[1:])))
    return Election(tuple(cands), positions, tuple(scores))


def dump_election_csv(e: Election) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["candidate", *e.positions])
    for c, row in zip(e.candidates, e.scores):
        w.writerow([c, *(format_score(x) for x in row)])
    return buf.getvalue()


def load_election(path) -> Election:
    with open(path, encoding="utf-8") as fh:
        return parse_election(fh.read())


def lineup_to_dict(e: Election, lu: Sequence[str]) -> dict:
    """Line-up report: position -> candidate map plus its score vector."""
    return {
        "assignment": {p: c for p, c in zip(e.positions, lu)},
        "score_vector": [format_score(x) for x in score_vector(e, lu)],
    }
