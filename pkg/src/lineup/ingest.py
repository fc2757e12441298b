"""Load per-player position scores from CSV and build team elections."""

from __future__ import annotations

import csv
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Mapping, Sequence

from .model import Election, ElectionError, parse_score

FORMATION_10 = (
    "left centre-back",
    "centre-back",
    "right centre-back",
    "left wing-back",
    "right wing-back",
    "left centre midfielder",
    "right centre midfielder",
    "central attacking midfielder",
    "left striker",
    "right striker",
)
PRESETS = {"formation-10": FORMATION_10}


class IngestError(ValueError):
    pass


@dataclass(frozen=True)
class PlayerRecord:
    player_id: str
    group: str
    position_scores: Mapping[str, Fraction]

    @property
    def total(self) -> Fraction:
        return sum(self.position_scores.values(), Fraction(0))


def load_players(path, positions: Sequence[str]) -> list[PlayerRecord]:
    """Read ``player_id,group,<position>...``; extra columns are ignored."""
    positions = list(positions)
    with open(Path(path), newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        missing = [c for c in ["player_id", "group", *positions] if c not in header]
        if missing:
            raise IngestError(f"{path}: line 1: missing column(s) {', '.join(repr(c) for c in missing)}")
        seen: dict[str, int] = {}
        out = []
        for row in reader:
            line = reader.line_num
            pid = (row["player_id"] or "").strip()
            if not pid:
                raise IngestError(f"{path}: line {line}: empty player_id")
            if pid in seen:
                raise IngestError(f"{path}: line {line}: duplicate player_id {pid!r} (first on line {seen[pid]})")
            seen[pid] = line
            scores = {}
            for p in positions:
                try:
                    scores[p] = parse_score((row[p] or "").strip())
                except ElectionError as exc:
                    raise IngestError(f"{path}: line {line}: column {p!r}: {exc}") from None
            out.append(PlayerRecord(pid, (row["group"] or "").strip(), scores))
    return out


def build_election(players: Sequence[PlayerRecord], group: str, top_n: int, positions: Sequence[str]) -> Election:
    """Top ``top_n`` players of ``group`` by summed score; ties go to the smaller id."""
    positions = list(positions)
    members = [p for p in players if p.group == group]
    need = max(top_n, len(positions))
    if len(members) < need:
        raise IngestError(f"group {group!r} has {len(members)} players, needs at least {need}")
    ranked = sorted(members, key=lambda p: (-sum(p.position_scores[x] for x in positions), p.player_id))
    chosen = ranked[:top_n]
    return Election.from_matrix(
        [[p.position_scores[x] for x in positions] for p in chosen],
        [p.player_id for p in chosen],
        positions,
    )


def groups(players: Sequence[PlayerRecord]) -> list[str]:
    return sorted({p.group for p in players})
