"""Assignment kernels behind the OWA rules.

* :func:`max_weight_assignment` -- Hungarian algorithm (O(m^3)) plus
  enumeration of every optimal line-up through the tight-edge subgraph.
* :func:`bottleneck_assignment` -- binary search over the distinct scores with
  a perfect-matching feasibility test.
* :func:`owa_optimize` -- exact depth-first branch-and-bound for an arbitrary
  non-negative OWA vector.

Every kernel works on the election's integer-scaled matrix, so results are
exact. Positions are the "rows" to be covered, candidates the "columns".
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from math import gcd
from typing import Callable, Iterable, Sequence

from .model import Election, ElectionError, WinnerSet, parse_score

DEFAULT_WINNER_CAP = 1000


class BudgetExceeded(RuntimeError):
    """The branch-and-bound node limit ran out before optimality was proven."""


@dataclass(frozen=True)
class SearchBudget:
    winner_cap: int = DEFAULT_WINNER_CAP
    node_limit: int | None = None

    def __post_init__(self):
        if self.winner_cap < 1:
            raise ValueError("winner_cap must be at least 1")
        if self.node_limit is not None and self.node_limit < 1:
            raise ValueError("node_limit must be positive")


DEFAULT_BUDGET = SearchBudget()


@dataclass(frozen=True)
class OwaVector:
    """Non-negative weights; ``weights[i]`` multiplies the (i+1)-th largest score."""

    weights: tuple[Fraction, ...]

    def __post_init__(self):
        ws = tuple(parse_score(w) for w in self.weights)
        object.__setattr__(self, "weights", ws)
        if not ws:
            raise ValueError("OWA vector must not be empty")
        if any(w < 0 for w in ws):
            raise ValueError("OWA weights must be non-negative")
        if not any(w > 0 for w in ws):
            raise ValueError("OWA vector needs a positive entry")

    def __len__(self):
        return len(self.weights)

    @classmethod
    def utilitarian(cls, q: int) -> "OwaVector":
        return cls((Fraction(1),) * q)

    @classmethod
    def egalitarian(cls, q: int) -> "OwaVector":
        return cls((Fraction(0),) * (q - 1) + (Fraction(1),))

    @classmethod
    def harmonic(cls, q: int) -> "OwaVector":
        return cls(tuple(Fraction(1, i) for i in range(1, q + 1)))

    @classmethod
    def inverse_harmonic(cls, q: int) -> "OwaVector":
        return cls(tuple(Fraction(1, i) for i in range(q, 0, -1)))


def owa_value(lam: OwaVector | Sequence, v: Sequence) -> Fraction:
    """Sum of ``lam[i]`` times the i-th largest entry of ``v``."""
    ws = lam.weights if isinstance(lam, OwaVector) else tuple(lam)
    if len(ws) != len(v):
        raise ValueError(f"OWA vector of length {len(ws)} applied to {len(v)} scores")
    return sum((w * x for w, x in zip(ws, sorted(v, reverse=True))), Fraction(0))


def normalize_owa(lam: OwaVector) -> OwaVector:
    top = max(lam.weights)
    if top <= 0:
        raise ValueError("cannot normalize an all-zero OWA vector")
    return OwaVector(tuple(w / top for w in lam.weights))


# --------------------------------------------------------------------------
# helpers


def _int_weights(weights: Sequence[Fraction]) -> tuple[list[int], int]:
    den = 1
    for w in weights:
        den = den * w.denominator // gcd(den, w.denominator)
    return [int(w * den) for w in weights], den


def _has_matching(rows: Sequence[int], allowed: Callable[[int, int], bool], cols: Iterable[int]) -> bool:
    """Kuhn's augmenting paths: can every row be matched into ``cols``?"""
    cols = list(cols)
    if len(cols) < len(rows):
        return False
    owner: dict[int, int] = {}

    def augment(r, seen):
        for c in cols:
            if c in seen or not allowed(r, c):
                continue
            seen.add(c)
            if c not in owner or augment(owner[c], seen):
                owner[c] = r
                return True
        return False

    for r in rows:
        if not augment(r, set()):
            return False
    return True


def _enumerate_matchings(q: int, m: int, allowed, cap: int):
    """All injective row->column maps over allowed edges, depth first.

    Returns at most cap + 1 assignments so truncation can be detected. Each
    interior node is pruned unless the open rows can still be matched.
    """
    out: list[tuple[int, ...]] = []
    assign = [0] * q
    used: set[int] = set()

    def feasible(j):
        rows = list(range(j, q))
        return _has_matching(rows, allowed, (c for c in range(m) if c not in used))

    def rec(j):
        if len(out) > cap:
            return
        if j == q:
            out.append(tuple(assign))
            return
        for c in range(m):
            if c in used or not allowed(j, c):
                continue
            assign[j] = c
            used.add(c)
            if j + 1 == q or feasible(j + 1):
                rec(j + 1)
            used.discard(c)
            if len(out) > cap:
                return

    if feasible(0):
        rec(0)
    return out


def _winner_set(e: Election, assignments, cap: int, objective) -> WinnerSet:
    truncated = len(assignments) > cap
    ordered = sorted(set(assignments))[:cap]
    return WinnerSet(tuple(e.lineup_from_indices(a) for a in ordered), objective, truncated)


# --------------------------------------------------------------------------
# utilitarian


def hungarian(cost: Sequence[Sequence[int]]):
    """Minimum-cost assignment of n rows into n' >= n columns.

    Returns ``(row_to_col, u, v)`` with dual potentials such that
    ``u[i] + v[j] <= cost[i][j]`` everywhere, tight on the assignment.
    Works with any exactly ordered numbers (ints here).
    """
    n = len(cost)
    mcols = len(cost[0])
    inf = None  # sentinel; compared explicitly so we never rely on float infinity
    u = [0] * (n + 1)
    v = [0] * (mcols + 1)
    p = [0] * (mcols + 1)  # p[j] = row matched to column j (1-based), 0 = free
    way = [0] * (mcols + 1)
    for i in range(1, n + 1):
        p[0] = i
        j0 = 0
        minv = [inf] * (mcols + 1)
        used = [False] * (mcols + 1)
        while True:
            used[j0] = True
            i0 = p[j0]
            delta = inf
            j1 = 0
            for j in range(1, mcols + 1):
                if used[j]:
                    continue
                cur = cost[i0 - 1][j - 1] - u[i0] - v[j]
                if minv[j] is inf or cur < minv[j]:
                    minv[j] = cur
                    way[j] = j0
                if delta is inf or minv[j] < delta:
                    delta = minv[j]
                    j1 = j
            for j in range(mcols + 1):
                if used[j]:
                    u[p[j]] += delta
                    v[j] -= delta
                else:
                    minv[j] -= delta
            j0 = j1
            if p[j0] == 0:
                break
        while True:
            j1 = way[j0]
            p[j0] = p[j1]
            j0 = j1
            if j0 == 0:
                break
    row_to_col = [0] * n
    for j in range(1, mcols + 1):
        if p[j]:
            row_to_col[p[j] - 1] = j - 1
    return row_to_col, u[1:], v[1:]


def _max_sum_tight(w, q, m, forbidden=None):
    """Optimal value and tight-edge predicate for max sum over allowed edges.

    ``w[c][p]`` is the integer score. The problem is padded to a square one
    with zero-weight dummy positions so that optimal line-ups are exactly the
    restrictions of perfect matchings in the tight subgraph.
    """
    big = 0
    if forbidden is not None:
        big = (sum(abs(x) for row in w for x in row) + 1) * (q + 1)
    cost = []
    for p in range(m):
        row = []
        for c in range(m):
            if p < q:
                x = w[c][p]
                if forbidden is not None and forbidden(c, p):
                    x = -big
                row.append(-x)
            else:
                row.append(0)
        cost.append(row)
    assign, u, v = hungarian(cost)
    best = -sum(cost[p][assign[p]] for p in range(m))

    def tight(p, c):
        if forbidden is not None and p < q and forbidden(c, p):
            return False
        return u[p] + v[c] == cost[p][c]

    return best, tight, assign


def _tight_enumeration(q, m, tight, cap):
    # rows 0..q-1 are real positions; dummy rows q..m-1 only need a completion
    dummies = list(range(q, m))
    out: list[tuple[int, ...]] = []
    assign = [0] * q
    used: set[int] = set()

    def feasible(j):
        rows = list(range(j, q)) + dummies
        return _has_matching(rows, tight, (c for c in range(m) if c not in used))

    def rec(j):
        if j == q:
            out.append(tuple(assign))
            return
        for c in range(m):
            if c in used or not tight(j, c):
                continue
            assign[j] = c
            used.add(c)
            if feasible(j + 1):
                rec(j + 1)
            used.discard(c)
            if len(out) > cap:
                return

    rec(0)
    return out


def max_weight_assignment(e: Election, budget: SearchBudget = DEFAULT_BUDGET) -> WinnerSet:
    """Utilitarian optimum and all line-ups attaining it."""
    mat, den = e.int_matrix
    best, tight, _ = _max_sum_tight(mat, e.q, e.m)
    found = _tight_enumeration(e.q, e.m, tight, budget.winner_cap)
    return _winner_set(e, found, budget.winner_cap, Fraction(best, den))


def max_sum_with_floor(e: Election, floor: Fraction, budget: SearchBudget = DEFAULT_BUDGET) -> WinnerSet:
    """Maximum summed score among line-ups whose every score is >= ``floor``."""
    mat, den = e.int_matrix
    t = floor * den
    if not _has_matching(range(e.q), lambda p, c: mat[c][p] >= t, range(e.m)):
        raise ElectionError(f"no line-up has all scores >= {floor}")
    best, tight, _ = _max_sum_tight(mat, e.q, e.m, forbidden=lambda c, p: mat[c][p] < t)
    found = _tight_enumeration(e.q, e.m, tight, budget.winner_cap)
    return _winner_set(e, found, budget.winner_cap, Fraction(best, den))


# --------------------------------------------------------------------------
# egalitarian


def bottleneck_value(e: Election) -> Fraction:
    """Largest t such that some line-up has every score >= t."""
    mat, den = e.int_matrix
    q, m = e.q, e.m
    values = sorted({x for row in mat for x in row})
    lo, hi = 0, len(values) - 1  # values[lo] is always feasible (the global minimum)
    while lo < hi:
        mid = (lo + hi + 1) // 2
        t = values[mid]
        if _has_matching(range(q), lambda p, c: mat[c][p] >= t, range(m)):
            lo = mid
        else:
            hi = mid - 1
    return Fraction(values[lo], den)


def bottleneck_assignment(e: Election, budget: SearchBudget = DEFAULT_BUDGET) -> WinnerSet:
    """Egalitarian optimum (max-min score) and all line-ups attaining it."""
    mat, den = e.int_matrix
    b = bottleneck_value(e)
    t = b * den
    found = _enumerate_matchings(e.q, e.m, lambda p, c: mat[c][p] >= t, budget.winner_cap)
    return _winner_set(e, found, budget.winner_cap, b)


# --------------------------------------------------------------------------
# generic OWA


def _owa_int(lam: Sequence[int], vec: list[int]) -> int:
    vec = sorted(vec, reverse=True)
    return sum(a * b for a, b in zip(lam, vec))


def _greedy_seeds(mat, q, m):
    """A few cheap complete line-ups used to initialise the incumbent."""
    seeds = []
    pairs = sorted(((mat[c][p], c, p) for c in range(m) for p in range(q)), reverse=True)
    assign = [-1] * q
    used = set()
    for _, c, p in pairs:
        if assign[p] < 0 and c not in used:
            assign[p] = c
            used.add(c)
    seeds.append(tuple(assign))
    _, _, hung = _max_sum_tight(mat, q, m)
    seeds.append(tuple(hung[:q]))
    return seeds


def _local_improve(lam, mat, q, m, assign):
    """Swap/replace hill climbing on the OWA value."""
    assign = list(assign)
    cur = _owa_int(lam, [mat[assign[p]][p] for p in range(q)])
    improved = True
    while improved:
        improved = False
        free = [c for c in range(m) if c not in set(assign)]
        for p in range(q):
            for p2 in range(p + 1, q):
                assign[p], assign[p2] = assign[p2], assign[p]
                val = _owa_int(lam, [mat[assign[k]][k] for k in range(q)])
                if val > cur:
                    cur, improved = val, True
                else:
                    assign[p], assign[p2] = assign[p2], assign[p]
            for c in free:
                old = assign[p]
                assign[p] = c
                val = _owa_int(lam, [mat[assign[k]][k] for k in range(q)])
                if val > cur:
                    cur, improved = val, True
                    free = [x for x in range(m) if x not in set(assign)]
                    break
                assign[p] = old
    return cur, tuple(assign)


def owa_optimize(
    e: Election,
    lam: OwaVector,
    budget: SearchBudget = DEFAULT_BUDGET,
    trace: Callable | None = None,
) -> WinnerSet:
    """Exact OWA optimum and all optimal line-ups by branch-and-bound.

    Positions are filled one at a time. At every node the bound is the OWA
    value of the partial score vector completed with each open position's best
    still-free candidate; this dominates every completion coordinate-wise, so
    with non-negative weights it never underestimates.

    ``trace(partial, bound)`` is called at each expanded node, where ``partial``
    maps position index to candidate index.
    """
    q, m = e.q, e.m
    if len(lam) != q:
        raise ValueError(f"OWA vector of length {len(lam)} for {q} positions")
    mat, den = e.int_matrix
    wl, wden = _int_weights(lam.weights)
    cap = budget.winner_cap
    node_limit = budget.node_limit

    # branch on the positions with the widest score spread first
    order = sorted(range(q), key=lambda p: -(max(mat[c][p] for c in range(m)) - min(mat[c][p] for c in range(m))))
    ranked = [sorted(range(m), key=lambda c: -mat[c][p]) for p in range(q)]

    best = None
    for seed in _greedy_seeds(mat, q, m):
        val, _ = _local_improve(wl, mat, q, m, seed)
        if best is None or val > best:
            best = val

    winners: list[tuple[int, ...]] = []
    assign = [-1] * q
    used = [False] * m
    vec: list[int] = []
    nodes = 0
    overflow = False

    def bound(depth):
        optimistic = list(vec)
        for k in range(depth, q):
            p = order[k]
            for c in ranked[p]:
                if not used[c]:
                    optimistic.append(mat[c][p])
                    break
        return _owa_int(wl, optimistic)

    def rec(depth):
        nonlocal best, nodes, overflow
        nodes += 1
        if node_limit is not None and nodes > node_limit:
            raise BudgetExceeded(f"node limit {node_limit} reached before optimality was proven")
        if depth == q:
            val = _owa_int(wl, vec)
            if val > best:
                best = val
                winners.clear()
                overflow = False
            if val == best:
                if len(winners) < cap:
                    winners.append(tuple(assign))
                else:
                    overflow = True
            return
        b = bound(depth)
        if trace is not None:
            trace({order[k]: assign[order[k]] for k in range(depth)}, Fraction(b, den * wden))
        if b < best:
            return
        p = order[depth]
        for c in ranked[p]:
            if used[c]:
                continue
            used[c] = True
            assign[p] = c
            vec.append(mat[c][p])
            rec(depth + 1)
            vec.pop()
            assign[p] = -1
            used[c] = False

    rec(0)
    objective = Fraction(best, den * wden)
    ordered = sorted(set(winners))
    return WinnerSet(tuple(e.lineup_from_indices(a) for a in ordered), objective, overflow)


# --------------------------------------------------------------------------
# brute force (test oracle and small-instance helper)


def all_lineups(e: Election) -> Iterable[tuple[int, ...]]:
    """Every injective position->candidate index tuple."""
    return permutations(range(e.m), e.q)


def brute_force_owa(e: Election, lam: OwaVector | Sequence) -> tuple[Fraction, frozenset]:
    """Optimal OWA value and the complete set of optimal line-ups, by enumeration."""
    ws = lam.weights if isinstance(lam, OwaVector) else tuple(parse_score(x) for x in lam)
    best, winners = None, []
    for idx in all_lineups(e):
        val = owa_value(ws, [e.scores[c][p] for p, c in enumerate(idx)])
        if best is None or val > best:
            best, winners = val, [idx]
        elif val == best:
            winners.append(idx)
    return best, frozenset(e.lineup_from_indices(i) for i in winners)
