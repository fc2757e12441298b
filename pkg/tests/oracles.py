"""Brute-force reference implementations, written independently of the package."""

from fractions import Fraction
from itertools import permutations
from math import lcm

from hypothesis import strategies as st

from lineup.model import Election


def scaled_ints(e):
    den = lcm(*(x.denominator for row in e.scores for x in row))
    return [[int(x * den) for x in row] for row in e.scores], den


def owa_winners(e, weights):
    """(best value, set of optimal index tuples) over all injective assignments."""
    mat, den = scaled_ints(e)
    wden = lcm(*(Fraction(w).denominator for w in weights))
    wi = [int(Fraction(w) * wden) for w in weights]
    best, win = None, set()
    for idx in permutations(range(e.m), e.q):
        vec = sorted((mat[c][p] for p, c in enumerate(idx)), reverse=True)
        val = sum(a * b for a, b in zip(wi, vec))
        if best is None or val > best:
            best, win = val, {idx}
        elif val == best:
            win.add(idx)
    return Fraction(best, den * wden), win


def egal_max_sum_winners(e):
    mat, den = scaled_ints(e)
    rows = [(min(mat[c][p] for p, c in enumerate(idx)), sum(mat[c][p] for p, c in enumerate(idx)), idx)
            for idx in permutations(range(e.m), e.q)]
    floor = max(r[0] for r in rows)
    top = max(r[1] for r in rows if r[0] == floor)
    return Fraction(top, den), {r[2] for r in rows if r[0] == floor and r[1] == top}


def sequential_winners(e, mode):
    """Tree walk over every tie branch, no memoisation."""
    s = e.scores
    out = set()

    def rec(assign, free, open_):
        if not open_:
            out.add(tuple(assign[p] for p in range(e.q)))
            return
        best = {p: max(s[c][p] for c in free) for p in open_}
        if mode == "seq-fixed":
            ps = [min(open_)]
        elif mode == "seq-max-first":
            ps = [p for p in open_ if best[p] == max(best.values())]
        else:
            ps = [p for p in open_ if best[p] == min(best.values())]
        for p in ps:
            for c in free:
                if s[c][p] == best[p]:
                    rec({**assign, p: c}, free - {c}, open_ - {p})

    rec({}, frozenset(range(e.m)), frozenset(range(e.q)))
    return out


def pareto_dominated(e, idx):
    s = e.scores
    base = [s[c][p] for p, c in enumerate(idx)]
    for other in permutations(range(e.m), e.q):
        vec = [s[c][p] for p, c in enumerate(other)]
        if all(a >= b for a, b in zip(vec, base)) and any(a > b for a, b in zip(vec, base)):
            return True
    return False


def indices(e, ws):
    ci = e.candidate_index
    return {tuple(ci[c] for c in lu) for lu in ws}


@st.composite
def elections(draw, max_q=4, max_extra=2, hi=4, min_q=1, rational=False):
    q = draw(st.integers(min_q, max_q))
    m = q + draw(st.integers(0, max_extra))
    if rational:
        cell = st.fractions(min_value=0, max_value=hi, max_denominator=6)
    else:
        cell = st.integers(0, hi)
    rows = draw(st.lists(st.lists(cell, min_size=q, max_size=q), min_size=m, max_size=m))
    return Election.from_matrix(rows)
