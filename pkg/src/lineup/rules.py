"""The line-up voting rules behind one ``apply_rule`` entry point.

OWA rules (utilitarian, egalitarian, harmonic, inverse harmonic, custom
vectors) maximise an ordered weighted average of the score vector.
Sequential rules fill one position at a time with the best remaining
candidate; which position goes next is decided by a selector. Sequential
winner sets contain every line-up reachable under some tie-breaking.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, FrozenSet, Sequence

from .matching import (
    DEFAULT_BUDGET,
    OwaVector,
    SearchBudget,
    bottleneck_assignment,
    bottleneck_value,
    max_sum_with_floor,
    max_weight_assignment,
    owa_optimize,
)
from .model import Election, WinnerSet

OWA_RULES = ("utilitarian", "egalitarian", "egalitarian-max-sum", "harmonic", "inverse-harmonic")
SEQUENTIAL_RULES = ("seq-fixed", "seq-max-first", "seq-min-first")
RULE_NAMES = OWA_RULES + SEQUENTIAL_RULES
# the seven rules of the axiomatic overview, in its row order
TABLE_RULES = ("utilitarian", "harmonic", "inverse-harmonic", "egalitarian", "seq-fixed", "seq-max-first", "seq-min-first")


class RuleError(ValueError):
    pass


@dataclass(frozen=True)
class Rule:
    """A rule identifier; ``weights`` is only set for custom OWA rules."""

    name: str
    weights: tuple[Fraction, ...] | None = None

    def __post_init__(self):
        if self.name == "owa":
            if not self.weights:
                raise RuleError("custom OWA rule needs weights")
            OwaVector(self.weights)
        elif self.name not in RULE_NAMES:
            raise RuleError(f"unknown rule {self.name!r}")

    def __str__(self):
        if self.name == "owa":
            return "owa:" + ",".join(str(w) for w in self.weights)
        return self.name

    @property
    def is_sequential(self) -> bool:
        return self.name in SEQUENTIAL_RULES


def parse_rule(text: str) -> Rule:
    """Parse ``utilitarian``, ``seq-min-first``, ``owa:1,1/2,1/3``, ...

    Underscores are accepted in place of dashes. OWA weights must be integers
    or ``n/d`` fractions: a truncated decimal such as ``0.3333`` is refused
    rather than silently standing in for 1/3.
    """
    text = text.strip()
    if text.startswith("owa:"):
        parts = [x.strip() for x in text[4:].split(",")]
        weights = []
        for x in parts:
            if not x or "." in x or "e" in x.lower():
                raise RuleError(f"OWA weights must be exact integers or fractions like 1/3, got {x!r}")
            try:
                weights.append(Fraction(x))
            except (ValueError, ZeroDivisionError):
                raise RuleError(f"bad OWA weight {x!r}") from None
        try:
            return Rule("owa", tuple(weights))
        except ValueError as exc:
            raise RuleError(str(exc)) from None
    name = text.replace("_", "-").lower()
    return Rule(name)


UTILITARIAN = Rule("utilitarian")
EGALITARIAN = Rule("egalitarian")
EGALITARIAN_MAX_SUM = Rule("egalitarian-max-sum")
HARMONIC = Rule("harmonic")
INVERSE_HARMONIC = Rule("inverse-harmonic")
SEQ_FIXED = Rule("seq-fixed")
SEQ_MAX_FIRST = Rule("seq-max-first")
SEQ_MIN_FIRST = Rule("seq-min-first")
ALL_RULES = tuple(Rule(n) for n in RULE_NAMES)


# --------------------------------------------------------------------------
# sequential engine

Selector = Callable[[Sequence[Sequence[int]], FrozenSet[int], FrozenSet[int], int], list[int]]


def _column_best(mat, p, free):
    return max(mat[c][p] for c in free)


def fixed_selector(mat, free: FrozenSet[int], open_positions: FrozenSet[int], q: int) -> list[int]:
    if not open_positions:
        raise RuleError("no open positions")
    return [min(open_positions)]


def max_first_selector(mat, free, open_positions, q) -> list[int]:
    """Open positions whose best free candidate scores highest."""
    if not open_positions:
        raise RuleError("no open positions")
    keys = {p: _column_best(mat, p, free) for p in open_positions}
    top = max(keys.values())
    return sorted(p for p, k in keys.items() if k == top)


def min_first_selector(mat, free, open_positions, q) -> list[int]:
    """Open positions whose best free candidate scores lowest."""
    if not open_positions:
        raise RuleError("no open positions")
    keys = {p: _column_best(mat, p, free) for p in open_positions}
    low = min(keys.values())
    return sorted(p for p, k in keys.items() if k == low)


SELECTORS: dict[str, Selector] = {
    "seq-fixed": fixed_selector,
    "seq-max-first": max_first_selector,
    "seq-min-first": min_first_selector,
}


def next_positions(e: Election, rule: Rule | str, assigned_candidates=(), assigned_positions=()) -> list[str]:
    """Positions the selector may fill next (ties included), by identifier."""
    name = rule.name if isinstance(rule, Rule) else rule
    if len(set(assigned_candidates)) != len(set(assigned_positions)):
        raise RuleError("assigned candidate and position sets differ in size")
    mat, _ = e.int_matrix
    free = frozenset(i for i, c in enumerate(e.candidates) if c not in set(assigned_candidates))
    open_ = frozenset(j for j, p in enumerate(e.positions) if p not in set(assigned_positions))
    return [e.positions[j] for j in SELECTORS[name](mat, free, open_, e.q)]


def sequential_run(e: Election, selector: Selector | str, budget: SearchBudget = DEFAULT_BUDGET) -> WinnerSet:
    """All line-ups reachable by the sequential procedure under some tie-breaking.

    Each step branches over every position the selector returns and every
    candidate tied for the best free score on it. States (the set of assigned
    pairs) are visited once, so the search is a DAG walk rather than a tree.
    """
    if isinstance(selector, str):
        selector = SELECTORS[selector]
    mat, _ = e.int_matrix
    q, m = e.q, e.m
    cap = budget.winner_cap
    results: set[tuple[int, ...]] = set()
    seen: set[frozenset] = set()
    truncated = False
    assign = [-1] * q

    def rec(free: frozenset, open_: frozenset, pairs: frozenset):
        nonlocal truncated
        if truncated:
            return
        if not open_:
            results.add(tuple(assign))
            if len(results) > cap:
                truncated = True
            return
        if pairs in seen:
            return
        seen.add(pairs)
        for p in selector(mat, free, open_, q):
            top = _column_best(mat, p, free)
            for c in sorted(free):
                if mat[c][p] != top:
                    continue
                assign[p] = c
                rec(free - {c}, open_ - {p}, pairs | {(c, p)})
                assign[p] = -1
                if truncated:
                    return

    rec(frozenset(range(m)), frozenset(range(q)), frozenset())
    ordered = sorted(results)[:cap]
    return WinnerSet(tuple(e.lineup_from_indices(a) for a in ordered), None, truncated)


# --------------------------------------------------------------------------


def owa_vector_for(rule: Rule, q: int) -> OwaVector | None:
    if rule.name == "utilitarian":
        return OwaVector.utilitarian(q)
    if rule.name == "egalitarian":
        return OwaVector.egalitarian(q)
    if rule.name == "harmonic":
        return OwaVector.harmonic(q)
    if rule.name == "inverse-harmonic":
        return OwaVector.inverse_harmonic(q)
    if rule.name == "owa":
        return OwaVector(rule.weights)
    return None


def apply_rule(rule: Rule | str, e: Election, budget: SearchBudget = DEFAULT_BUDGET) -> WinnerSet:
    """Winning line-ups of ``e`` under ``rule``."""
    if isinstance(rule, str):
        rule = parse_rule(rule)
    name = rule.name
    if name == "utilitarian":
        return max_weight_assignment(e, budget)
    if name == "egalitarian":
        return bottleneck_assignment(e, budget)
    if name == "egalitarian-max-sum":
        return max_sum_with_floor(e, bottleneck_value(e), budget)
    if name in SELECTORS:
        return sequential_run(e, SELECTORS[name], budget)
    if name == "owa" and len(rule.weights) != e.q:
        raise RuleError(f"OWA vector has {len(rule.weights)} weights for {e.q} positions")
    return owa_optimize(e, owa_vector_for(rule, e.q), budget)
