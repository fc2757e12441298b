import json
from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, strategies as st

from lineup import axioms as ax
from lineup.fixtures import e1, epsilon_election
from lineup.matching import OwaVector, owa_optimize
from lineup.model import Election, score_vector
from lineup.rules import apply_rule
from oracles import elections, pareto_dominated

F = Fraction


def test_rd_pairs_epsilon():
    e = epsilon_election()
    assert ax.reasonable_dissatisfaction_pairs(e, ("b", "a")) == {("a", "p1", F(1, 2))}
    assert ax.reasonable_dissatisfaction_pairs(e, ("a", "b")) == set()


def test_pareto_examples():
    assert not ax.is_score_pareto_optimal(Election.from_matrix([[1, 1, 3], [1, 3, 2], [0, 0, 0]]), ("a", "c", "b"))
    e = Election.from_matrix([[2, 1], [2, 0]])
    assert ax.pareto_dominator(e, ("a", "b")) == ("b", "a")


def test_non_wasteful_e1():
    assert not ax.is_non_wasteful(e1(), ("b", "a"))
    assert ax.is_non_wasteful(e1(), ("c", "a"))


@given(elections(max_q=4, hi=3))
def test_predicates_match_brute_force(e):
    s = e.scores
    for idx in permutations(range(e.m), e.q):
        lu = e.lineup_from_indices(idx)
        assert ax.is_score_pareto_optimal(e, lu) == (not pareto_dominated(e, idx))
        assigned = set(idx)
        wasteful = any(s[c][p] > s[idx[p]][p] for p in range(e.q) for c in range(e.m) if c not in assigned)
        assert ax.is_non_wasteful(e, lu) == (not wasteful)
        unhappy = any(
            s[idx[pp]][p] > s[idx[p]][p] and s[idx[pp]][p] > s[idx[pp]][pp]
            for p in range(e.q) for pp in range(e.q) if p != pp
        ) or any(s[c][p] > s[idx[p]][p] for p in range(e.q) for c in range(e.m) if c not in assigned)
        assert ax.is_reasonably_satisfying(e, lu) == (not unhappy)


@given(elections(max_q=4, hi=4))
def test_owa_winners_non_wasteful_and_pareto(e):
    for rule in ("utilitarian", "harmonic", "inverse-harmonic", "egalitarian-max-sum"):
        for lu in apply_rule(rule, e):
            assert ax.is_non_wasteful(e, lu)
            assert ax.is_score_pareto_optimal(e, lu)
    assert any(ax.is_score_pareto_optimal(e, lu) for lu in apply_rule("egalitarian", e))


def test_position_consistency_trivial_split():
    e = Election.from_matrix([[1, 2, 0], [2, 2, 1], [0, 3, 3]])
    for rule in ("utilitarian", "harmonic", "seq-min-first"):
        res = ax.check_position_consistency(rule, e, e.positions, e.positions)
        assert res.a is True and res.b is True


def test_position_consistency_needs_cover():
    e = Election.from_matrix([[1, 2, 0], [2, 2, 1], [0, 3, 3]])
    with pytest.raises(ValueError):
        ax.check_position_consistency("utilitarian", e, ["p1"], ["p2"])


def test_score_consistency_vacuous():
    a = Election.from_matrix([[1, 0], [0, 1]])
    b = Election.from_matrix([[0, 1], [1, 0]])
    res = ax.check_score_consistency("utilitarian", a, b)
    assert not res.applicable and not res.strong_violated


def test_monotonicity_preconditions():
    with pytest.raises(ValueError):
        ax.check_monotonicity("utilitarian", e1(), ["c", "a"], "p1", 0)
    with pytest.raises(ValueError):
        ax.check_monotonicity("utilitarian", e1(), ["a", "b"], "p1", 1)


def test_truncated_sets_are_inconclusive():
    from lineup.matching import SearchBudget

    e = Election.from_matrix([[0] * 3] * 4)
    res = ax.check_score_consistency("utilitarian", e, e, SearchBudget(winner_cap=2))
    assert res.inconclusive and not res.strong_violated


@given(elections(max_q=4, hi=4), st.sampled_from(["utilitarian", "seq-fixed", "seq-max-first"]))
def test_utilitarian_and_greedy_rules_never_lose_a_raised_winner(e, rule):
    ws = apply_rule(rule, e)
    res = ax.check_monotonicity(rule, e, ws.first, e.positions[0], 1)
    assert res.a
    if rule == "utilitarian":
        assert res.b


def test_search_is_reproducible():
    a = ax.search_counterexample("harmonic", "monotonicity", 1000, 7, 5, 5)
    b = ax.search_counterexample("harmonic", "monotonicity", 1000, 7, 5, 5)
    assert a.level == b.level == "violated_weak"
    assert json.dumps(a.witness, sort_keys=True) == json.dumps(b.witness, sort_keys=True)


def test_search_validates_trials():
    with pytest.raises(ValueError):
        ax.search_counterexample("utilitarian", "monotonicity", 0, 1)


@pytest.mark.parametrize("rule,axiom", [
    ("egalitarian", "monotonicity"),
    ("harmonic", "position-consistency"),
    ("seq-min-first", "score-consistency"),
    ("seq-fixed", "score-pareto"),
])
def test_witnesses_replay(rule, axiom):
    v = ax.search_counterexample(rule, axiom, 3000, 5, 5, 5)
    assert v.witness is not None
    doc = json.loads(json.dumps(v.witness))
    res = ax.replay(rule, axiom, doc)
    assert res.strong_violated
    if v.level == "violated_weak":
        assert res.weak_violated


def test_lift_identity_and_errors():
    e = epsilon_election()
    assert ax.lift_counterexample(e, 2, 0) is e
    with pytest.raises(ValueError):
        ax.lift_counterexample(e, 3, 2)
    with pytest.raises(ValueError):
        ax.lift_counterexample(e, 1, 0)


def test_lift_epsilon_keeps_the_comparison():
    e = epsilon_election()
    inner = (F(1, 2), F(1, 4))
    base = owa_optimize(e, OwaVector(inner))
    lifted = ax.lift_counterexample(e, 3, 1)
    ws = owa_optimize(lifted, OwaVector((1,) + inner))
    assert [lu[:2] for lu in ws] == list(base)
    assert all(lu[2] == "d1" for lu in ws)


def test_lift_below_occupies_smallest_slots():
    lifted = ax.lift_counterexample(e1(), 4, 0)
    lam = OwaVector.harmonic(4)
    ws = owa_optimize(lifted, lam)
    for lu in ws:
        vec = score_vector(lifted, lu)
        designated = sorted(vec[2:])
        original = sorted(vec[:2])
        assert designated[-1] < original[0]
        assert set(lu[2:]) == {"d1", "d2"}


def test_price_examples():
    assert ax.price_of_reasonable_satisfaction(epsilon_election()) == F(2, 3)
    assert ax.price_of_reasonable_satisfaction(Election.from_matrix([[3, 0], [0, 3]])) == 1
    with pytest.raises(ValueError):
        ax.price_of_reasonable_satisfaction(Election.from_matrix([[1] * 11] * 11), exhaustive_bound=10)


@given(elections(max_q=4, hi=5))
def test_price_between_half_and_one(e):
    if all(x == 0 for row in e.scores for x in row):
        return
    assert F(1, 2) <= ax.price_of_reasonable_satisfaction(e) <= 1


def test_reference_table_shape():
    assert set(ax.REFERENCE_TABLE) == {"utilitarian", "harmonic", "inverse-harmonic", "egalitarian",
                                       "seq-fixed", "seq-max-first", "seq-min-first"}
    assert all(list(row) == list(ax.AXIOMS) for row in ax.REFERENCE_TABLE.values())
