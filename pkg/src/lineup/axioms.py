"""Axioms for line-up rules: line-up predicates, rule-level checkers and search.

Every voting axiom has two conditions. Condition (a) asks that certain
line-ups stay (or become) winning, condition (b) that no other line-ups are
winning. A rule satisfies an axiom *weakly* if (a) always holds and
*strongly* if (a) and (b) hold. For the three line-up axioms
(non-wastefulness, score Pareto optimality, reasonable satisfaction) the
same split is expressed as "some winner satisfies" (a) versus "every winner
satisfies" (b).

Checkers return a :class:`CheckResult`; :func:`search_counterexample` runs a
checker on random small elections and returns an :class:`AxiomVerdict`.
Search never proves satisfaction, it only fails to refute.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from typing import Sequence

from .matching import DEFAULT_BUDGET, SearchBudget, _has_matching
from .model import (
    Election,
    ElectionError,
    LineUp,
    WinnerSet,
    election_from_dict,
    election_to_dict,
    parse_score,
    restrict,
    restrict_lineup,
)
from .rules import Rule, apply_rule, parse_rule

AXIOMS = (
    "non-wastefulness",
    "score-pareto",
    "reasonable-satisfaction",
    "score-consistency",
    "position-consistency",
    "monotonicity",
    "lineup-enlargement",
)
LINEUP_AXIOMS = AXIOMS[:3]

# Overview table of the axiomatic analysis: S strong, W weak only, - neither.
REFERENCE_TABLE = {
    "utilitarian": "S S - S W S S",
    "harmonic": "S S - - - - -",
    "inverse-harmonic": "S S - - - - -",
    "egalitarian": "W W - - W - W",
    "seq-fixed": "S W - W W S S",
    "seq-max-first": "S W S - W S S",
    "seq-min-first": "S - - - W - -",
}
REFERENCE_TABLE = {rule: dict(zip(AXIOMS, row.split())) for rule, row in REFERENCE_TABLE.items()}


def parse_axiom(text: str) -> str:
    name = text.strip().lower().replace("_", "-")
    aliases = {"score-pareto-optimality": "score-pareto", "pareto": "score-pareto", "line-up-enlargement": "lineup-enlargement"}
    name = aliases.get(name, name)
    if name not in AXIOMS:
        raise ValueError(f"unknown axiom {text!r}; expected one of {', '.join(AXIOMS)}")
    return name


# --------------------------------------------------------------------------
# line-up predicates


def _indices(e: Election, lu) -> tuple[int, ...]:
    lu = e.validate_lineup(lu)
    return e.lineup_indices(lu)


def is_non_wasteful(e: Election, lu) -> bool:
    """No unassigned candidate beats the assigned one on some position."""
    idx = _indices(e, lu)
    assigned = set(idx)
    s = e.scores
    for p, holder in enumerate(idx):
        for c in range(e.m):
            if c not in assigned and s[c][p] > s[holder][p]:
                return False
    return True


def pareto_dominator(e: Election, lu) -> LineUp | None:
    """A line-up that scores at least as well everywhere and better somewhere, if any.

    For each strictly better pair (c, p) we ask whether the remaining
    positions can be covered with candidates scoring at least as well as in
    ``lu``; that is a bipartite matching question, so no enumeration is needed.
    """
    idx = _indices(e, lu)
    s = e.scores
    q, m = e.q, e.m
    floor = [s[idx[p]][p] for p in range(q)]

    def ok(p, c):
        return s[c][p] >= floor[p]

    for p0 in range(q):
        for c0 in range(m):
            if s[c0][p0] <= floor[p0]:
                continue
            rows = [p for p in range(q) if p != p0]
            cols = [c for c in range(m) if c != c0]
            if _has_matching(rows, ok, cols):
                return LineUp(e.candidates[i] for i in _complete(rows, ok, cols, q, p0, c0))
    return None


def _complete(rows, ok, cols, q, p0, c0):
    owner: dict[int, int] = {}

    def augment(r, seen):
        for c in cols:
            if c in seen or not ok(r, c):
                continue
            seen.add(c)
            if c not in owner or augment(owner[c], seen):
                owner[c] = r
                return True
        return False

    for r in rows:
        augment(r, set())
    assign = [0] * q
    assign[p0] = c0
    for c, r in owner.items():
        assign[r] = c
    return assign


def is_score_pareto_optimal(e: Election, lu) -> bool:
    return pareto_dominator(e, lu) is None


def reasonable_dissatisfaction_pairs(e: Election, lu) -> set[tuple[str, str, Fraction]]:
    """Pairs (c, p, severity) where c beats ``lu``'s holder of p and would rather be there.

    c qualifies if it is unassigned or scores strictly higher on p than on its
    own position. Severity is the score gap on p.
    """
    idx = _indices(e, lu)
    s = e.scores
    where = {c: p for p, c in enumerate(idx)}
    out = set()
    for p, holder in enumerate(idx):
        here = s[holder][p]
        for c in range(e.m):
            if c == holder or s[c][p] <= here:
                continue
            if c not in where or s[c][p] > s[c][where[c]]:
                out.add((e.candidates[c], e.positions[p], s[c][p] - here))
    return out


def is_reasonably_satisfying(e: Election, lu) -> bool:
    return not reasonable_dissatisfaction_pairs(e, lu)


LINEUP_PREDICATES = {
    "non-wastefulness": is_non_wasteful,
    "score-pareto": is_score_pareto_optimal,
    "reasonable-satisfaction": is_reasonably_satisfying,
}


# --------------------------------------------------------------------------
# checker results


@dataclass
class CheckResult:
    """Outcome of one axiom check.

    ``a``/``b`` are ``None`` when the axiom's premise does not apply
    (vacuous pass) or the result is inconclusive because a winner set was
    truncated.
    """

    axiom: str
    rule: str
    a: bool | None
    b: bool | None
    applicable: bool = True
    inconclusive: bool = False
    witness: dict = field(default_factory=dict)

    @property
    def weak_violated(self) -> bool:
        return self.a is False

    @property
    def strong_violated(self) -> bool:
        return self.a is False or self.b is False


def _lineups(ws: WinnerSet):
    return [list(lu) for lu in ws]


def _inconclusive(axiom, rule, *sets):
    return any(ws.truncated for ws in sets)


def check_lineup_axiom(rule, e: Election, axiom: str, budget: SearchBudget = DEFAULT_BUDGET) -> CheckResult:
    """(a): some winner satisfies the predicate; (b): every winner does."""
    rule = _rule(rule)
    pred = LINEUP_PREDICATES[axiom]
    ws = apply_rule(rule, e, budget)
    good = [pred(e, lu) for lu in ws]
    bad = [list(lu) for lu, g in zip(ws, good) if not g]
    a = any(good)
    b = all(good)
    witness = {
        "kind": "lineup",
        "election": election_to_dict(e),
        "winners": _lineups(ws),
        "failing": bad,
    }
    if ws.truncated:
        # a satisfying winner found in a partial set still proves (a)
        return CheckResult(axiom, str(rule), True if a else None, False if not b else None, True, not a or b, witness)
    return CheckResult(axiom, str(rule), a, b, True, False, witness)


def check_score_consistency(rule, e1: Election, e2: Election, budget: SearchBudget = DEFAULT_BUDGET) -> CheckResult:
    """Common winners of e1 and e2 must win (a), and be the only winners (b), in e1 + e2."""
    rule = _rule(rule)
    w1, w2 = apply_rule(rule, e1, budget), apply_rule(rule, e2, budget)
    combined = e1 + e2
    w3 = apply_rule(rule, combined, budget)
    common = w1.as_set() & w2.as_set()
    witness = {
        "kind": "score-consistency",
        "elections": [election_to_dict(e1), election_to_dict(e2)],
        "winners": [_lineups(w1), _lineups(w2), _lineups(w3)],
    }
    if _inconclusive(None, None, w1, w2, w3):
        return CheckResult("score-consistency", str(rule), None, None, bool(common), True, witness)
    if not common:
        return CheckResult("score-consistency", str(rule), None, None, False, False, witness)
    missing = sorted(common - w3.as_set())
    extra = sorted(w3.as_set() - common)
    witness["missing_from_combined"] = [list(x) for x in missing]
    witness["extra_in_combined"] = [list(x) for x in extra]
    return CheckResult("score-consistency", str(rule), not missing, not extra, True, False, witness)


def overlapping_disjoint(e: Election, sub1: Sequence[str], lu1, sub2: Sequence[str], lu2) -> bool:
    """Agree on shared positions; candidates on the unshared positions are disjoint."""
    a = dict(zip(sub1, lu1))
    b = dict(zip(sub2, lu2))
    shared = set(a) & set(b)
    if any(a[p] != b[p] for p in shared):
        return False
    only_a = {a[p] for p in a if p not in shared}
    only_b = {b[p] for p in b if p not in shared}
    return not (only_a & set(b.values())) and not (only_b & set(a.values()))


def union_lineup(e: Election, sub1, lu1, sub2, lu2) -> LineUp:
    merged = dict(zip(sub1, lu1))
    merged.update(zip(sub2, lu2))
    return LineUp(merged[p] for p in e.positions)


def check_position_consistency(rule, e: Election, part1, part2, budget: SearchBudget = DEFAULT_BUDGET) -> CheckResult:
    """Unions of overlapping-disjoint sub-election winners must win (a); every winner must decompose (b)."""
    rule = _rule(rule)
    part1, part2 = set(part1), set(part2)
    if part1 | part2 != set(e.positions):
        raise ElectionError("the two position subsets must cover all positions")
    e1, e2 = restrict(e, part1), restrict(e, part2)
    w1, w2, wf = apply_rule(rule, e1, budget), apply_rule(rule, e2, budget), apply_rule(rule, e, budget)
    witness = {
        "kind": "position-consistency",
        "election": election_to_dict(e),
        "parts": [list(e1.positions), list(e2.positions)],
        "winners": [_lineups(w1), _lineups(w2), _lineups(wf)],
    }
    if _inconclusive(None, None, w1, w2, wf):
        return CheckResult("position-consistency", str(rule), None, None, True, True, witness)
    pairs = [
        (x, y)
        for x in w1
        for y in w2
        if overlapping_disjoint(e, e1.positions, x, e2.positions, y)
    ]
    if not pairs:
        return CheckResult("position-consistency", str(rule), None, None, False, False, witness)
    not_winning = []
    for x, y in pairs:
        u = union_lineup(e, e1.positions, x, e2.positions, y)
        if u not in wf:
            not_winning.append({"parts": [list(x), list(y)], "union": list(u)})
    undecomposable = [
        list(lu)
        for lu in wf
        if restrict_lineup(e, lu, part1) not in w1 or restrict_lineup(e, lu, part2) not in w2
    ]
    witness["unions_not_winning"] = not_winning
    witness["winners_not_decomposable"] = undecomposable
    return CheckResult("position-consistency", str(rule), not not_winning, not undecomposable, True, False, witness)


def check_monotonicity(rule, e: Election, winner, position: str, delta, budget: SearchBudget = DEFAULT_BUDGET) -> CheckResult:
    """Raise the winner's score on ``position`` by ``delta``; it must keep winning (a) with no new winners (b)."""
    rule = _rule(rule)
    delta = parse_score(delta)
    if delta <= 0:
        raise ValueError("monotonicity needs a positive increase")
    winner = e.validate_lineup(winner)
    before = apply_rule(rule, e, budget)
    if winner not in before:
        raise ElectionError(f"{winner!r} is not a winner of the election")
    j = e.position_index[position]
    c = winner[j]
    modified = e.replace_score(c, position, e.score(c, position) + delta)
    after = apply_rule(rule, modified, budget)
    witness = {
        "kind": "monotonicity",
        "election": election_to_dict(e),
        "winner": list(winner),
        "position": position,
        "delta": str(delta),
        "winners": [_lineups(before), _lineups(after)],
    }
    if before.truncated or after.truncated:
        return CheckResult("monotonicity", str(rule), None, None, True, True, witness)
    new = sorted(after.as_set() - before.as_set())
    witness["new_winners"] = [list(x) for x in new]
    return CheckResult("monotonicity", str(rule), winner in after, not new, True, False, witness)


def check_lineup_enlargement(
    rule,
    e: Election,
    column: Sequence,
    name: str = "p*",
    index: int | None = None,
    budget: SearchBudget = DEFAULT_BUDGET,
) -> CheckResult:
    """Add a position; compare candidate sets of old and new winners.

    (a) every old winner's candidates are contained in some new winner's,
    (b) every new winner contains some old winner's candidates.
    """
    rule = _rule(rule)
    if e.m < e.q + 1:
        raise ElectionError("line-up enlargement needs at least q + 1 candidates")
    bigger = e.with_position(name, column, index)
    small, large = apply_rule(rule, e, budget), apply_rule(rule, bigger, budget)
    witness = {
        "kind": "lineup-enlargement",
        "election": election_to_dict(e),
        "column": [str(parse_score(x)) for x in column],
        "name": name,
        "index": index,
        "winners": [_lineups(small), _lineups(large)],
    }
    if small.truncated or large.truncated:
        return CheckResult("lineup-enlargement", str(rule), None, None, True, True, witness)
    small_sets = [frozenset(lu) for lu in small]
    large_sets = [frozenset(lu) for lu in large]
    a_fail = [sorted(s) for s in small_sets if not any(s <= t for t in large_sets)]
    b_fail = [sorted(t) for t in large_sets if not any(s <= t for s in small_sets)]
    witness["unextended"] = a_fail
    witness["unexplained"] = b_fail
    return CheckResult("lineup-enlargement", str(rule), not a_fail, not b_fail, True, False, witness)


def _rule(rule) -> Rule:
    return parse_rule(rule) if isinstance(rule, str) else rule


def replay_witness(rule, witness: dict, budget: SearchBudget = DEFAULT_BUDGET) -> CheckResult:
    """Re-run the check a witness bundle describes."""
    kind = witness["kind"]
    if kind == "lineup":
        raise ValueError("line-up witnesses need the axiom name; use replay_lineup_witness")
    if kind == "score-consistency":
        e1, e2 = (election_from_dict(d) for d in witness["elections"])
        return check_score_consistency(rule, e1, e2, budget)
    e = election_from_dict(witness["election"])
    if kind == "position-consistency":
        return check_position_consistency(rule, e, witness["parts"][0], witness["parts"][1], budget)
    if kind == "monotonicity":
        return check_monotonicity(rule, e, witness["winner"], witness["position"], witness["delta"], budget)
    if kind == "lineup-enlargement":
        return check_lineup_enlargement(rule, e, witness["column"], witness["name"], witness["index"], budget)
    raise ValueError(f"unknown witness kind {kind!r}")


def replay(rule, axiom: str, witness: dict, budget: SearchBudget = DEFAULT_BUDGET) -> CheckResult:
    if axiom in LINEUP_AXIOMS:
        return check_lineup_axiom(rule, election_from_dict(witness["election"]), axiom, budget)
    return replay_witness(rule, witness, budget)


# --------------------------------------------------------------------------
# random search


@dataclass
class AxiomVerdict:
    """Search outcome for one (rule, axiom) cell.

    level is one of ``strong_holds_sofar``, ``weak_holds_sofar`` (a strong
    violation was found but no weak one), ``violated_weak`` and
    ``violated_strong`` (search stopped at the first strong violation, so the
    weak status is unknown).
    """

    axiom: str
    rule: str
    level: str
    witness: dict | None = None
    trials: int = 0
    source: str | None = None

    @property
    def symbol(self) -> str:
        return {
            "strong_holds_sofar": "S",
            "weak_holds_sofar": "W",
            "violated_weak": "-",
            "violated_strong": "W?",
        }[self.level]


def trial_rng(seed: int, trial: int) -> random.Random:
    """Independent per-trial generator derived from the master seed."""
    return random.Random(f"{seed}/{trial}")


def random_election(rng: random.Random, q_range=(1, 5), m_max: int = 5, extra: int = 0, mode: str = "int") -> Election:
    """Small random election; integer mode keeps exact ties likely.

    ``extra`` forces at least that many more candidates than positions.
    """
    q = rng.randint(q_range[0], q_range[1])
    m_lo = q + extra
    m = rng.randint(m_lo, max(m_lo, m_max))
    if mode == "int":
        hi = rng.choice((1, 2, 3, 4, 6))
        mat = [[rng.randint(0, hi) for _ in range(q)] for _ in range(m)]
    elif mode == "rational":
        mat = [[Fraction(rng.randint(0, 1000), 1000) for _ in range(q)] for _ in range(m)]
    else:
        raise ValueError(f"unknown sampling mode {mode!r}")
    return Election.from_matrix(mat)


def random_trial(rule, axiom: str, rng: random.Random, m_max: int = 5, q_max: int = 5, mode: str = "int",
                 budget: SearchBudget = DEFAULT_BUDGET) -> CheckResult:
    """Sample one instance for ``axiom`` and run its checker."""
    if axiom in LINEUP_AXIOMS:
        e = random_election(rng, (1, q_max), m_max, mode=mode)
        return check_lineup_axiom(rule, e, axiom, budget)
    if axiom == "score-consistency":
        e1 = random_election(rng, (1, q_max), m_max, mode=mode)
        if rng.random() < 0.5:
            other = random_election(rng, (e1.q, e1.q), e1.m, mode=mode)
            rows = [r[: e1.q] for r in other.scores]
            while len(rows) < e1.m:
                rows.append(tuple(Fraction(rng.randint(0, 3)) for _ in range(e1.q)))
            e2 = e1.with_scores(tuple(rows[: e1.m]))
        else:
            # perturb e1 so the two elections are likely to share a winner
            e2 = e1.with_scores(tuple(tuple(x + rng.choice((0, 0, 1)) for x in row) for row in e1.scores))
        return check_score_consistency(rule, e1, e2, budget)
    if axiom == "position-consistency":
        e = random_election(rng, (2, q_max), m_max, mode=mode)
        while True:
            tags = [rng.choice((0, 1, 2)) for _ in e.positions]
            p1 = [p for p, t in zip(e.positions, tags) if t in (0, 2)]
            p2 = [p for p, t in zip(e.positions, tags) if t in (1, 2)]
            if p1 and p2:
                break
        return check_position_consistency(rule, e, p1, p2, budget)
    if axiom == "monotonicity":
        e = random_election(rng, (1, q_max), m_max, mode=mode)
        winners = apply_rule(rule, e, budget)
        lu = rng.choice(winners.lineups)
        p = rng.choice(e.positions)
        delta = rng.choice((1, 1, 2, 3)) if mode == "int" else Fraction(rng.randint(1, 500), 1000)
        return check_monotonicity(rule, e, lu, p, delta, budget)
    if axiom == "lineup-enlargement":
        e = random_election(rng, (1, max(1, q_max - 1)), m_max, extra=1, mode=mode)
        hi = max(max(r) for r in e.scores) + 1
        if mode == "int":
            col = [rng.randint(0, int(hi)) for _ in range(e.m)]
        else:
            col = [Fraction(rng.randint(0, 1000), 1000) for _ in range(e.m)]
        idx = rng.randint(0, e.q)
        return check_lineup_enlargement(rule, e, col, "p*", idx, budget)
    raise ValueError(f"unknown axiom {axiom!r}")


def search_counterexample(
    rule,
    axiom: str,
    trials: int,
    seed: int,
    m_max: int = 6,
    q_max: int = 6,
    mode: str = "int",
    stop_on_strong: bool = False,
    budget: SearchBudget = DEFAULT_BUDGET,
) -> AxiomVerdict:
    """Look for a violation of ``axiom`` under ``rule`` on random elections.

    Stops at the first weak violation. Strong-only violations are remembered
    and the search continues, so a finished search distinguishes the S, W and
    - cells of the overview table. Deterministic given ``seed``.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    rule = _rule(rule)
    axiom = parse_axiom(axiom)
    strong_witness = None
    for t in range(trials):
        res = random_trial(rule, axiom, trial_rng(seed, t), m_max, q_max, mode, budget)
        if res.inconclusive or not res.applicable:
            continue
        if res.weak_violated:
            return AxiomVerdict(axiom, str(rule), "violated_weak", _tag(res, t), t + 1, "search")
        if res.strong_violated and strong_witness is None:
            strong_witness = _tag(res, t)
            if stop_on_strong:
                return AxiomVerdict(axiom, str(rule), "violated_strong", strong_witness, t + 1, "search")
    if strong_witness is not None:
        return AxiomVerdict(axiom, str(rule), "weak_holds_sofar", strong_witness, trials, "search")
    return AxiomVerdict(axiom, str(rule), "strong_holds_sofar", None, trials, "search")


def _tag(res: CheckResult, trial: int) -> dict:
    w = dict(res.witness)
    w["trial"] = trial
    w["condition"] = "a" if res.a is False else "b"
    w["axiom"] = res.axiom
    w["rule"] = res.rule
    return w


# --------------------------------------------------------------------------
# constructions and welfare


def lift_counterexample(e: Election, k: int, split: int) -> Election:
    """Embed ``e`` into an election with ``k`` positions.

    Each of the ``k - q`` new positions gets its own new designated candidate.
    Everybody else scores a large negative value there, and designated
    candidates score that value on the original positions, so they never
    leave their slot in a sensible line-up. ``split`` designated candidates
    score above every original score, the others below, which moves the
    original example to a chosen window of a length-``k`` OWA vector
    (slots ``split`` .. ``split + q - 1``, counting from the largest).
    """
    q = e.q
    if k < q:
        raise ValueError("target length must be at least the number of positions")
    if not 0 <= split <= k - q:
        raise ValueError(f"split must lie in [0, {k - q}]")
    if k == q:
        return e
    values = [x for row in e.scores for x in row]
    hi, lo = max(values), min(values)
    span = max(abs(hi), abs(lo))
    penalty = -(1 + span) * k
    extra = k - q
    new_cands = _fresh_names(e, "d", extra)
    new_pos = _fresh_names(e, "x", extra, positions=True)
    rows = []
    for row in e.scores:
        rows.append(tuple(row) + (penalty,) * extra)
    for t in range(extra):
        own = hi + 1 + t if t < split else lo - 1 - t
        rows.append((penalty,) * q + tuple(own if s == t else penalty for s in range(extra)))
    return Election(e.candidates + new_cands, e.positions + new_pos, tuple(rows))


def _fresh_names(e, prefix, count, positions=False):
    taken = set(e.positions if positions else e.candidates)
    names, i = [], 1
    while len(names) < count:
        name = f"{prefix}{i}"
        if name not in taken:
            names.append(name)
        i += 1
    return tuple(names)


def price_of_reasonable_satisfaction(e: Election, exhaustive_bound: int = 10) -> Fraction:
    """Best summed score of a reasonably satisfying line-up over the utilitarian optimum.

    Exhaustive over line-ups, so only for small elections. Scores are assumed
    non-negative; an all-zero election has price 1.
    """
    if e.q > exhaustive_bound:
        raise ValueError(f"q = {e.q} exceeds the exhaustive bound {exhaustive_bound}")
    s = e.scores
    best_all, best_rs = None, None
    for idx in permutations(range(e.m), e.q):
        total = sum(s[c][p] for p, c in enumerate(idx))
        if best_all is None or total > best_all:
            best_all = total
        if best_rs is not None and total <= best_rs:
            continue
        if is_reasonably_satisfying(e, e.lineup_from_indices(idx)):
            best_rs = total
    if best_all == 0:
        return Fraction(1)
    if best_all < 0:
        raise ValueError("price of reasonable satisfaction needs a positive utilitarian optimum")
    return Fraction(best_rs) / best_all
