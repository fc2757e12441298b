from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, strategies as st

from lineup.fixtures import e1, intro_election
from lineup.matching import (
    BudgetExceeded,
    OwaVector,
    SearchBudget,
    bottleneck_assignment,
    bottleneck_value,
    brute_force_owa,
    max_sum_with_floor,
    max_weight_assignment,
    normalize_owa,
    owa_optimize,
    owa_value,
)
from lineup.model import Election
from oracles import egal_max_sum_winners, elections, indices, owa_winners

weights = st.lists(st.fractions(min_value=0, max_value=3, max_denominator=4), min_size=1, max_size=5)


def test_owa_value_sorts_descending():
    assert owa_value((1, Fraction(1, 2), Fraction(1, 3)), (1, 3, 2)) == 3 + 1 + Fraction(1, 3)


def test_owa_vector_validation():
    with pytest.raises(ValueError):
        OwaVector((0, 0))
    with pytest.raises(ValueError):
        OwaVector((1, -1))
    assert normalize_owa(OwaVector((2, 1))).weights == (1, Fraction(1, 2))


def test_intro_utilitarian_and_egalitarian():
    e = intro_election()
    ut = max_weight_assignment(e)
    assert list(ut) == [("Götze", "Özil", "Müller")] and ut.objective == 21
    eg = bottleneck_assignment(e)
    assert list(eg) == [("Müller", "Götze", "Özil")] and eg.objective == 5


def test_e1_egalitarian_ties():
    ws = bottleneck_assignment(e1())
    assert ws.as_set() == {("b", "a"), ("c", "a")}
    assert list(max_sum_with_floor(e1(), bottleneck_value(e1()))) == [("c", "a")]


def test_all_zero_election_has_every_lineup():
    e = Election.from_matrix([[0, 0], [0, 0], [0, 0]])
    assert len(max_weight_assignment(e)) == 6
    assert len(bottleneck_assignment(e)) == 6


def test_winner_cap_truncates():
    e = Election.from_matrix([[0] * 4] * 5)
    ws = max_weight_assignment(e, SearchBudget(winner_cap=7))
    assert ws.truncated and len(ws) == 7
    ws = owa_optimize(e, OwaVector.harmonic(4), SearchBudget(winner_cap=7))
    assert ws.truncated and len(ws) == 7


def test_node_limit_raises():
    rows = [[(7 * c + 3 * p) % 11 for p in range(7)] for c in range(8)]
    with pytest.raises(BudgetExceeded):
        owa_optimize(Election.from_matrix(rows), OwaVector.harmonic(7), SearchBudget(node_limit=2))


def test_brute_force_helper_matches_oracle():
    e = intro_election()
    best, win = brute_force_owa(e, OwaVector.harmonic(3))
    ob, ow = owa_winners(e, OwaVector.harmonic(3).weights)
    assert best == ob and indices(e, win) == ow


@given(elections(max_q=5, hi=5))
def test_utilitarian_matches_brute_force(e):
    ws = max_weight_assignment(e)
    best, win = owa_winners(e, [1] * e.q)
    assert ws.objective == best and indices(e, ws) == win


@given(elections(max_q=5, hi=5))
def test_egalitarian_matches_brute_force(e):
    ws = bottleneck_assignment(e)
    best, win = owa_winners(e, [0] * (e.q - 1) + [1])
    assert ws.objective == best and indices(e, ws) == win


@given(elections(max_q=5, hi=5))
def test_egalitarian_max_sum_matches_brute_force(e):
    ws = max_sum_with_floor(e, bottleneck_value(e))
    best, win = egal_max_sum_winners(e)
    assert ws.objective == best and indices(e, ws) == win


@given(elections(max_q=5, hi=4, rational=True), st.sampled_from(["harmonic", "inverse_harmonic"]))
def test_named_owa_matches_brute_force(e, kind):
    lam = getattr(OwaVector, kind)(e.q)
    ws = owa_optimize(e, lam)
    best, win = owa_winners(e, lam.weights)
    assert ws.objective == best and indices(e, ws) == win


@given(st.data())
def test_custom_owa_matches_brute_force(data):
    w = data.draw(weights.filter(lambda x: any(v > 0 for v in x)))
    e = data.draw(elections(min_q=len(w), max_q=len(w), hi=4))
    ws = owa_optimize(e, OwaVector(w))
    best, win = owa_winners(e, w)
    assert ws.objective == best and indices(e, ws) == win


@given(elections(max_q=4, hi=5), st.sampled_from(["harmonic", "inverse_harmonic"]))
def test_bound_is_admissible(e, kind):
    """Every expanded node's bound is at least the best completion of its partial line-up."""
    lam = getattr(OwaVector, kind)(e.q)
    seen = []
    owa_optimize(e, lam, trace=lambda partial, bound: seen.append((dict(partial), bound)))
    assert seen
    s = e.scores
    for partial, bound in seen:
        used = set(partial.values())
        best = None
        for rest in permutations([c for c in range(e.m) if c not in used], e.q - len(partial)):
            open_ = [p for p in range(e.q) if p not in partial]
            full = dict(partial)
            full.update(zip(open_, rest))
            val = owa_value(lam, [s[full[p]][p] for p in range(e.q)])
            best = val if best is None or val > best else best
        assert bound >= best


@given(elections(max_q=4, hi=5), st.fractions(min_value=Fraction(1, 7), max_value=10, max_denominator=7))
def test_argmax_invariant_under_scaling(e, k):
    scaled = e.scaled(k)
    assert max_weight_assignment(scaled).as_set() == max_weight_assignment(e).as_set()
    assert bottleneck_assignment(scaled).as_set() == bottleneck_assignment(e).as_set()
    lam = OwaVector.harmonic(e.q)
    assert owa_optimize(scaled, lam).as_set() == owa_optimize(e, lam).as_set()
