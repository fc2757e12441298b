"""Hand-built counterexample elections with their expected verdicts.

Each :class:`Fixture` names an axiom, the rules it is meant for and the
expected (a)/(b) outcome per rule. ``run`` evaluates the checker, so the
same objects drive the golden tests and the table derivation in the CLI.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import axioms as ax
from .model import Election

E = Election.from_matrix
F = Fraction


def intro_election() -> Election:
    return E([[5, 10, 9], [3, 8, 5], [4, 7, 4]], ["Müller", "Özil", "Götze"], ["L", "C", "R"])


def e1() -> Election:
    return E([[0, 3], [3, 0], [4, 0]])


def e2() -> Election:
    return E([[4, 1, 0], ["19/4", 3, 0], [0, 0, 2]])


def e3() -> Election:
    return E([[2, 1], [0, 0]])


def epsilon_election(eps=F(1, 2)) -> Election:
    eps = F(eps)
    return E([[2, 2 - eps], [2 - eps, 0]])


def owa_monotonicity_election(x, y, z) -> Election:
    """Generic monotonicity counterexample for a three-entry OWA vector (x, y, z)."""
    x, y, z = F(x), F(y), F(z)
    return E([[4, 1, 0], [4 + (y / 2 + 3 * z / 2) / x, 3, 0], [0, 0, 2]])


def owa_rs_election(y) -> Election:
    return E([[1, 1 + F(y) / 2], [0, 1]])


def min_first_lem() -> tuple[Election, list]:
    rows = [[0, 6, 4, 0, 0], [2, 3, 0, 0, 0], [7, 0, 0, 5, 1], [1, 0, 0, 0, 0], [0, 0, 0, 1, 0], [0, 1, 0, 0, 0]]
    return E([r[:4] for r in rows]), [r[4] for r in rows]


@dataclass
class Fixture:
    name: str
    axiom: str
    expected: dict  # rule -> (a, b)
    check: Callable[[str], ax.CheckResult]
    winners: dict = field(default_factory=dict)  # description -> (rule, election, expected line-ups)
    reference: bool = True  # False: contradicts the reference table

    def run(self, rule: str) -> ax.CheckResult:
        return self.check(rule)


def _lineup(name, e, rules, expected, winners=None):
    return Fixture(name, name.split(":")[0], {r: expected for r in rules},
                   lambda r, e=e, a=name.split(":")[0]: ax.check_lineup_axiom(r, e, a), winners or {})


def _fixtures() -> list[Fixture]:
    fx: list[Fixture] = []

    # monotonicity
    fx.append(Fixture("monotonicity:E1", "monotonicity", {"egalitarian": (False, True)},
                      lambda r: ax.check_monotonicity(r, e1(), ["b", "a"], "p2", 1),
                      {"before": ("egalitarian", e1(), [("b", "a"), ("c", "a")]),
                       "after": ("egalitarian", e1().replace_score("a", "p2", 4), [("c", "a")])}))
    fx.append(Fixture("monotonicity:E2", "monotonicity", {"harmonic": (False, False)},
                      lambda r: ax.check_monotonicity(r, e2(), ["a", "b", "c"], "p3", 1),
                      {"before": ("harmonic", e2(), [("a", "b", "c")]),
                       "after": ("harmonic", e2().replace_score("c", "p3", 3), [("b", "a", "c")])}))
    ih = owa_monotonicity_election(F(1, 3), F(1, 2), 1)
    fx.append(Fixture("monotonicity:inverse-harmonic", "monotonicity", {"inverse-harmonic": (False, False)},
                      lambda r: ax.check_monotonicity(r, ih, ["b", "a", "c"], "p3", 1),
                      {"before": ("inverse-harmonic", ih, [("b", "a", "c")])}))
    fx.append(Fixture("monotonicity:E3", "monotonicity", {"seq-min-first": (False, False)},
                      lambda r: ax.check_monotonicity(r, e3(), ["b", "a"], "p2", 2),
                      {"before": ("seq-min-first", e3(), [("b", "a")]),
                       "after": ("seq-min-first", e3().replace_score("a", "p2", 3), [("a", "b")])}))

    # line-up axioms
    fx.append(_lineup("non-wastefulness:E1", e1(), ["egalitarian"], (True, False)))
    fx.append(_lineup("score-pareto:E1", e1(), ["egalitarian"], (True, False)))
    fx.append(_lineup("score-pareto:fixed", E([[2, 1], [2, 0]]), ["seq-fixed", "seq-max-first"], (True, False),
                      {"winners": ("seq-fixed", E([[2, 1], [2, 0]]), [("a", "b"), ("b", "a")])}))
    mp = E([[1, 1, 3], [1, 3, 2], [0, 0, 0]])
    fx.append(_lineup("score-pareto:min-first", mp, ["seq-min-first"], (False, False),
                      {"winners": ("seq-min-first", mp, [("a", "c", "b"), ("b", "a", "c")])}))
    fx.append(_lineup("reasonable-satisfaction:epsilon", epsilon_election(), ["utilitarian"], (False, False),
                      {"winners": ("utilitarian", epsilon_election(), [("b", "a")])}))
    fx.append(_lineup("reasonable-satisfaction:owa-half", owa_rs_election(F(1, 2)),
                      ["harmonic", "inverse-harmonic"], (False, False)))
    fx.append(_lineup("reasonable-satisfaction:owa-one", owa_rs_election(1), ["egalitarian", "utilitarian"], (False, False)))
    fs = E([[1, 2], [0, 1]])
    fx.append(_lineup("reasonable-satisfaction:sequential", fs, ["seq-fixed", "seq-min-first"], (False, False),
                      {"winners": ("seq-fixed", fs, [("a", "b")])}))

    # score consistency
    o1, o2 = E([[4, 3], [2, 1]]), E([[1, 3], [2, 4]])
    fx.append(Fixture("score-consistency:owa", "score-consistency",
                      {"harmonic": (False, False), "inverse-harmonic": (False, False),
                       "egalitarian": (False, False), "seq-max-first": (False, False)},
                      lambda r: ax.check_score_consistency(r, o1, o2),
                      {"max-first combined": ("seq-max-first", o1 + o2, [("b", "a")])}))
    f1, f2 = E([[3, 1], [3, 3], [0, 3]]), E([[3, 3], [3, 3], [0, 1]])
    fx.append(Fixture("score-consistency:fixed", "score-consistency", {"seq-fixed": (True, False)},
                      lambda r: ax.check_score_consistency(r, f1, f2),
                      {"combined": ("seq-fixed", f1 + f2, [("a", "b"), ("b", "a"), ("b", "c")])}))
    m1, m2 = E([[1, 3], [0, 0]]), E([[0, 0], [4, 1]])
    fx.append(Fixture("score-consistency:min-first", "score-consistency", {"seq-min-first": (False, False)},
                      lambda r: ax.check_score_consistency(r, m1, m2),
                      {"combined": ("seq-min-first", m1 + m2, [("b", "a")])}))

    # position consistency
    parts = (["p1", "p2"], ["p2", "p3"])
    ph = E([[1, 3, 0], [3, "4.1", 0], [0, 0, 5]])
    fx.append(Fixture("position-consistency:harmonic", "position-consistency", {"harmonic": (False, False)},
                      lambda r: ax.check_position_consistency(r, ph, *parts)))
    pi = E([[2, 1, 0], ["15/4", 2, 0], [0, 0, "1/2"]])
    fx.append(Fixture("position-consistency:inverse-harmonic", "position-consistency",
                      {"inverse-harmonic": (False, False)},
                      lambda r: ax.check_position_consistency(r, pi, *parts)))
    pe = E([[1, 0, 0], [0, 3, 2], [0, 2, 3]])
    fx.append(Fixture("position-consistency:egalitarian", "position-consistency", {"egalitarian": (True, False)},
                      lambda r: ax.check_position_consistency(r, pe, *parts)))
    pu = E([[0, 0, 0], [1, 1, 0], [0, 0, 0]])
    fx.append(Fixture("position-consistency:utilitarian", "position-consistency", {"utilitarian": (True, False)},
                      lambda r: ax.check_position_consistency(r, pu, *parts)))
    ps = E([[1, 0, 0], [0, 1, 0], [1, 0, 1]])
    fx.append(Fixture("position-consistency:sequential", "position-consistency",
                      {r: (True, False) for r in ("seq-fixed", "seq-max-first", "seq-min-first")},
                      lambda r: ax.check_position_consistency(r, ps, *parts)))

    # line-up enlargement (new position appended last)
    le = E([[3, 0], [2, 3], [0, 2], [0, 0]])
    fx.append(Fixture("lineup-enlargement:egalitarian", "lineup-enlargement", {"egalitarian": (True, False)},
                      lambda r: ax.check_lineup_enlargement(r, le, [0, 0, 0, 1])))
    lh = E([["1/2", 0], [3, "3.3"], [0, 1], [0, 0]])
    fx.append(Fixture("lineup-enlargement:harmonic", "lineup-enlargement", {"harmonic": (False, False)},
                      lambda r: ax.check_lineup_enlargement(r, lh, [0, 0, 0, 4]),
                      {"extended": ("harmonic", lh.with_position("p*", [0, 0, 0, 4]), [("b", "c", "d")])}))
    li = E([["1.7", 0], [3, "1.7"], [0, 1], [0, 0]])
    fx.append(Fixture("lineup-enlargement:inverse-harmonic", "lineup-enlargement", {"inverse-harmonic": (False, False)},
                      lambda r: ax.check_lineup_enlargement(r, li, [0, 0, 0, 1])))
    base, col = min_first_lem()
    fx.append(Fixture("lineup-enlargement:min-first", "lineup-enlargement", {"seq-min-first": (False, False)},
                      lambda r: ax.check_lineup_enlargement(r, base, col),
                      {"small": ("seq-min-first", base, [("d", "b", "a", "c")]),
                       "extended": ("seq-min-first", base.with_position("p*", col), [("b", "f", "a", "e", "c")])}))
    # strong-monotonicity refutations for fixed order and max-first (found by search)
    mf = E([[1, 2], [0, 1], [1, 1]])
    fx.append(Fixture("monotonicity:fixed-new-winner", "monotonicity", {"seq-fixed": (True, False)},
                      lambda r: ax.check_monotonicity(r, mf, ["a", "b"], "p2", 1),
                      {"after": ("seq-fixed", mf.replace_score("b", "p2", 2), [("a", "b"), ("c", "a"), ("c", "b")])},
                      reference=False))
    mm = E([[2, 2], [2, 0], [2, 1]])
    fx.append(Fixture("monotonicity:max-first-new-winner", "monotonicity", {"seq-max-first": (True, False)},
                      lambda r: ax.check_monotonicity(r, mm, ["a", "c"], "p2", 1),
                      {"after": ("seq-max-first", mm.replace_score("c", "p2", 2),
                                 [("a", "c"), ("b", "a"), ("b", "c"), ("c", "a")])},
                      reference=False))
    return fx


FIXTURES = _fixtures()


def fixtures_for(rule: str, axiom: str) -> list[Fixture]:
    return [f for f in FIXTURES if f.axiom == axiom and rule in f.expected]
