"""Comparison metrics for winning line-ups and model-level competition measures.

Rule computation is exact; the metrics here are plain floats.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Sequence

from .axioms import reasonable_dissatisfaction_pairs
from .matching import bottleneck_value, max_weight_assignment
from .model import Election, score_vector


@dataclass(frozen=True)
class MetricBundle:
    normalized_sum: float
    min_score: float
    gini: float
    reasonable_dissatisfaction: float

    def as_dict(self) -> dict:
        return asdict(self)


def utopic_outcome(e: Election) -> tuple[Fraction, ...]:
    """Column maxima: every position gets its best candidate, injectivity ignored."""
    return tuple(max(e.scores[c][p] for c in range(e.m)) for p in range(e.q))


def gini(x: Sequence) -> float:
    vals = [float(v) for v in x]
    if not vals:
        raise ValueError("gini of an empty vector")
    if any(v < 0 for v in vals):
        raise ValueError("gini needs non-negative values")
    total = sum(vals)
    if total <= 0:
        raise ValueError("gini is undefined for an all-zero vector")
    n = len(vals)
    diff = sum(abs(a - b) for a in vals for b in vals)
    return diff / (2 * n * total)


def bundle(e: Election, lu) -> MetricBundle:
    v = score_vector(e, lu)
    utopic = sum(utopic_outcome(e))
    if utopic <= 0:
        raise ValueError("normalized sum needs a positive utopic outcome")
    rd = sum((sev for _, _, sev in reasonable_dissatisfaction_pairs(e, lu)), Fraction(0))
    g = gini(v) if sum(v) > 0 else 0.0
    return MetricBundle(float(Fraction(sum(v)) / utopic), float(min(v)), g, float(rd))


def model_competition_metrics(e: Election) -> tuple[float, float, float]:
    """(relative conflicting score, Gini of per-position score sums, social conflict).

    Social conflict compares the egalitarian optimum with the minimum of the
    canonically first utilitarian winner.
    """
    utopic = sum(utopic_outcome(e))
    ut = max_weight_assignment(e)
    relative = (utopic - ut.objective) / utopic
    sums = [sum(e.scores[c][p] for c in range(e.m)) for p in range(e.q)]
    conflict = bottleneck_value(e) - min(score_vector(e, ut.first))
    return float(relative), gini(sums), float(conflict)
