"""Derive the rule-by-axiom verdict matrix: fixtures first, then random search."""

from __future__ import annotations

from dataclasses import dataclass

from .axioms import AXIOMS, REFERENCE_TABLE, AxiomVerdict, _tag, search_counterexample
from .fixtures import fixtures_for
from .rules import TABLE_RULES


def derive_cell(rule: str, axiom: str, trials: int, seed: int, m_max: int = 5, q_max: int = 5) -> AxiomVerdict:
    strong = None
    for fx in fixtures_for(rule, axiom):
        res = fx.run(rule)
        if res.weak_violated:
            return AxiomVerdict(axiom, rule, "violated_weak", _tag(res, -1), 0, f"fixture:{fx.name}")
        if res.strong_violated and strong is None:
            strong = (_tag(res, -1), f"fixture:{fx.name}")
    found = search_counterexample(rule, axiom, trials, seed, m_max, q_max)
    if found.level == "violated_weak" or strong is None:
        return found
    return AxiomVerdict(axiom, rule, "weak_holds_sofar", strong[0], found.trials, strong[1])


@dataclass
class TableResult:
    cells: dict  # (rule, axiom) -> AxiomVerdict

    def symbol(self, rule, axiom) -> str:
        return self.cells[(rule, axiom)].symbol

    def disagreements(self) -> list[tuple[str, str, str, str]]:
        """Cells whose symbol differs from the reference: (rule, axiom, got, expected)."""
        out = []
        for (rule, axiom), v in self.cells.items():
            ref = REFERENCE_TABLE.get(rule, {}).get(axiom)
            if ref is not None and v.symbol != ref:
                out.append((rule, axiom, v.symbol, ref))
        return out

    def render(self) -> str:
        rules = list(dict.fromkeys(r for r, _ in self.cells))
        axioms = list(dict.fromkeys(a for _, a in self.cells))
        width = max(len(r) for r in rules)
        head = " " * width + " | " + " | ".join(axioms)
        lines = [head, "-" * len(head)]
        for r in rules:
            row = []
            for a in axioms:
                sym = self.symbol(r, a)
                ref = REFERENCE_TABLE.get(r, {}).get(a)
                mark = sym if ref in (None, sym) else f"{sym}(ref {ref})"
                row.append(mark.center(len(a)))
            lines.append(r.ljust(width) + " | " + " | ".join(row))
        return "\n".join(lines)


def derive_table(rules=TABLE_RULES, axioms=AXIOMS, trials: int = 10_000, seed: int = 7,
                 m_max: int = 5, q_max: int = 5, progress=None) -> TableResult:
    cells = {}
    for r in rules:
        for a in axioms:
            cells[(r, a)] = derive_cell(r, a, trials, seed, m_max, q_max)
            if progress:
                progress(cells[(r, a)])
    return TableResult(cells)
