"""Command-line entry point: solve, axioms, experiment, generate, ingest.

Exit codes: 0 ok, 2 bad input, 3 search budget exhausted, 4 some elections
in an experiment failed.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import statistics
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path

from . import datagen, ingest
from .axioms import AXIOMS, parse_axiom
from .matching import DEFAULT_WINNER_CAP, BudgetExceeded, SearchBudget
from .metrics import MetricBundle, bundle, model_competition_metrics
from .model import Election, ElectionError, dump_election, lineup_to_dict, load_election
from .rules import RULE_NAMES, TABLE_RULES, RuleError, apply_rule, parse_rule

log = logging.getLogger("lineup")

EXIT_OK, EXIT_INPUT, EXIT_BUDGET, EXIT_PARTIAL = 0, 2, 3, 4
RECORD_FIELDS = ("election_id", "rule", "normalized_sum", "min_score", "gini",
                 "reasonable_dissatisfaction", "runtime_ms", "truncated")
METRIC_FIELDS = RECORD_FIELDS[2:6]


class InputError(Exception):
    pass


def _budget(args) -> SearchBudget:
    return SearchBudget(winner_cap=args.winner_cap, node_limit=args.node_limit)


# --------------------------------------------------------------------------
# solve


def cmd_solve(args) -> int:
    e = load_election(args.election)
    rule = parse_rule(args.rule)
    ws = apply_rule(rule, e, _budget(args))
    report = {
        "rule": str(rule),
        "objective": None if ws.objective is None else str(ws.objective),
        "truncated": ws.truncated,
        "winners": [lineup_to_dict(e, lu) for lu in ws],
    }
    if args.json:
        print(json.dumps(report, indent=2, ensure_ascii=False))
        return EXIT_OK
    print(f"rule: {rule}")
    if ws.objective is not None:
        print(f"objective: {ws.objective}")
    print(f"winners: {len(ws)}{' (truncated)' if ws.truncated else ''}")
    for lu in ws:
        pairs = ", ".join(f"{p}={c}" for p, c in zip(e.positions, lu))
        vec = ", ".join(str(x) for x in lineup_to_dict(e, lu)["score_vector"])
        print(f"  ({pairs})  scores [{vec}]")
    return EXIT_OK


# --------------------------------------------------------------------------
# axioms


def cmd_axioms(args) -> int:
    from .table import derive_cell, TableResult

    rules = list(TABLE_RULES) if args.rule == "all" else [str(parse_rule(args.rule))]
    if args.include_max_sum and "egalitarian-max-sum" not in rules:
        rules.append("egalitarian-max-sum")
    axioms = list(AXIOMS) if args.axiom == "all" else [parse_axiom(args.axiom)]
    wdir = Path(args.witness_dir) if args.witness_dir else None
    if wdir:
        wdir.mkdir(parents=True, exist_ok=True)
    cells = {}
    for r in rules:
        for a in axioms:
            v = derive_cell(r, a, args.trials, args.seed, args.m_max, args.q_max)
            cells[(r, a)] = v
            where = ""
            if wdir and v.witness is not None:
                path = wdir / f"{r}__{a}.json"
                path.write_text(json.dumps({"rule": r, "axiom": a, "level": v.level, "source": v.source,
                                            "witness": v.witness}, indent=1, ensure_ascii=False) + "\n")
                where = f"  witness: {path}"
            print(f"{r:20s} {a:24s} {v.symbol:3s} {v.level:20s} {v.source or ''}{where}")
    print()
    print(TableResult(cells).render())
    return EXIT_OK


# --------------------------------------------------------------------------
# experiment


@dataclass
class ExperimentRecord:
    election_id: str
    rule: str
    metrics: MetricBundle
    runtime_ms: float
    truncated: bool

    def row(self) -> list:
        m = self.metrics
        return [self.election_id, self.rule, repr(m.normalized_sum), repr(m.min_score), repr(m.gini),
                repr(m.reasonable_dissatisfaction), f"{self.runtime_ms:.3f}", str(self.truncated).lower()]


def evaluate(election_id: str, e: Election, rule: str, budget: SearchBudget, deterministic: bool) -> ExperimentRecord:
    """Apply one rule and score its selected line-up.

    The canonically first winner is used, except that egalitarian ties are
    resolved by highest summed score.
    """
    start = time.perf_counter()
    chosen = "egalitarian-max-sum" if rule == "egalitarian" else rule
    ws = apply_rule(chosen, e, budget)
    elapsed = 0.0 if deterministic else (time.perf_counter() - start) * 1000
    return ExperimentRecord(election_id, rule, bundle(e, ws.first), elapsed, ws.truncated)


def _run_one(job):
    eid, doc, rules, cap, limit, deterministic = job
    from .model import election_from_dict

    e = election_from_dict(doc)
    budget = SearchBudget(winner_cap=cap, node_limit=limit)
    records, failures = [], []
    for r in rules:
        try:
            records.append(evaluate(eid, e, r, budget, deterministic))
        except (BudgetExceeded, ValueError) as exc:
            failures.append((eid, r, f"{type(exc).__name__}: {exc}"))
    try:
        model = model_competition_metrics(e)
    except ValueError as exc:
        model = None
        failures.append((eid, "model-metrics", str(exc)))
    return records, model, failures


def load_config(path) -> dict:
    try:
        cfg = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON: {exc}") from None
    if not isinstance(cfg, dict) or "source" not in cfg:
        raise InputError(f"{path}: config needs a 'source' object")
    return cfg


def experiment_elections(source: dict) -> list[tuple[str, Election]]:
    if "generator" in source:
        g = dict(source["generator"])
        spec = datagen.GenSpec(g.pop("model"), int(g.pop("m")), int(g.pop("q")), int(g.pop("count", 1)),
                               int(g.pop("seed", 0)), bool(g.pop("normalize", True)))
        if g:
            raise InputError(f"unknown generator keys: {', '.join(sorted(g))}")
        width = len(str(spec.count - 1))
        return [(f"{spec.model.lower()}-{i:0{width}d}", e) for i, e in enumerate(datagen.generate(spec))]
    if "csv" in source:
        positions = _positions(source.get("positions"), source.get("preset"))
        players = ingest.load_players(source["csv"], positions)
        top_n = int(source.get("top_n", len(positions)))
        wanted = source.get("groups") or ingest.groups(players)
        out = []
        for grp in wanted:
            try:
                e = ingest.build_election(players, grp, top_n, positions)
            except ingest.IngestError as exc:
                log.warning("skipping group %s: %s", grp, exc)
                continue
            if source.get("normalize", False):
                e = datagen.normalize_election(e)
            out.append((grp, e))
        return out
    if "elections" in source:
        return [(Path(p).stem, load_election(p)) for p in source["elections"]]
    raise InputError("source needs 'generator', 'csv' or 'elections'")


def _positions(names, preset):
    if preset:
        if preset not in ingest.PRESETS:
            raise InputError(f"unknown preset {preset!r}; known: {', '.join(ingest.PRESETS)}")
        return list(ingest.PRESETS[preset])
    if not names:
        raise InputError("give 'positions' or 'preset'")
    return list(names)


def summarize(records: list[ExperimentRecord], rules: list[str]) -> list[list]:
    rows = []
    for r in rules:
        recs = [x for x in records if x.rule == r]
        for field in METRIC_FIELDS:
            vals = sorted(getattr(x.metrics, field) for x in recs)
            if not vals:
                continue
            if len(vals) > 1:
                q1, _, q3 = statistics.quantiles(vals, n=4, method="inclusive")
            else:
                q1 = q3 = vals[0]
            rows.append([r, field, len(vals), repr(statistics.median(vals)), repr(q1), repr(q3),
                         repr(vals[0]), repr(vals[-1])])
    return rows


def _write_csv(path: Path, header, rows, stamp: str | None):
    buf = io.StringIO()
    if stamp:
        buf.write(f"# generated {stamp}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    path.write_text(buf.getvalue(), encoding="utf-8", newline="")


def run_experiment(cfg: dict, out: Path, jobs: int = 1, deterministic: bool = False) -> int:
    rules = [str(parse_rule(r)) for r in cfg.get("rules", RULE_NAMES)]
    cap = int(cfg.get("winner_cap", DEFAULT_WINNER_CAP))
    limit = cfg.get("node_limit")
    elections = experiment_elections(cfg["source"])
    from .model import election_to_dict

    jobs_in = [(eid, election_to_dict(e), rules, cap, limit, deterministic) for eid, e in elections]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_one, jobs_in))
    else:
        results = [_run_one(j) for j in jobs_in]

    records, models, failures = [], [], []
    for (eid, _), (recs, model, fails) in zip(elections, results):
        records.extend(recs)
        failures.extend(fails)
        if model is not None:
            models.append([eid, *(repr(x) for x in model)])
    order = {r: i for i, r in enumerate(rules)}
    records.sort(key=lambda x: (x.election_id, order[x.rule]))
    for eid, r, msg in failures:
        log.error("election %s, rule %s failed: %s", eid, r, msg)

    out.mkdir(parents=True, exist_ok=True)
    stamp = None if deterministic else datetime.now(timezone.utc).isoformat(timespec="seconds")
    _write_csv(out / "records.csv", RECORD_FIELDS, [x.row() for x in records], stamp)
    _write_csv(out / "summary.csv", ("rule", "metric", "count", "median", "q1", "q3", "min", "max"),
               summarize(records, rules), stamp)
    _write_csv(out / "model_metrics.csv",
               ("election_id", "relative_conflicting_score", "gini_position_sums", "social_conflict"),
               models, stamp)
    log.info("%d records for %d elections written to %s", len(records), len(elections), out)
    return EXIT_PARTIAL if failures else EXIT_OK


def cmd_experiment(args) -> int:
    cfg = load_config(args.config)
    if args.rules:
        cfg["rules"] = [r.strip() for r in args.rules.split(",") if r.strip()]
    out = Path(args.out or cfg.get("output", "results"))
    jobs = args.jobs if args.jobs is not None else int(cfg.get("jobs", 1))
    deterministic = args.deterministic or bool(cfg.get("deterministic", False))
    return run_experiment(cfg, out, jobs, deterministic)


# --------------------------------------------------------------------------
# generate / ingest


def cmd_generate(args) -> int:
    spec = datagen.GenSpec(args.model, args.m, args.q, args.count, args.seed, not args.no_normalize)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    width = len(str(spec.count - 1))
    for i, e in enumerate(datagen.generate(spec)):
        (out / f"{spec.model.lower()}-{i:0{width}d}.json").write_text(dump_election(e) + "\n", encoding="utf-8")
    print(f"wrote {spec.count} election(s) to {out}")
    return EXIT_OK


def cmd_ingest(args) -> int:
    positions = _positions(args.positions.split(",") if args.positions else None, args.preset)
    players = ingest.load_players(args.csv, positions)
    top_n = args.top_n or len(positions)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    wanted = [args.group] if args.group else ingest.groups(players)
    written = 0
    for grp in wanted:
        try:
            e = ingest.build_election(players, grp, top_n, positions)
        except ingest.IngestError as exc:
            if args.group:
                raise
            log.warning("skipping group %s: %s", grp, exc)
            continue
        safe = "".join(ch if ch.isalnum() or ch in "-_" else "_" for ch in grp)
        (out / f"{safe}.json").write_text(dump_election(e) + "\n", encoding="utf-8")
        written += 1
    print(f"wrote {written} election(s) to {out}")
    return EXIT_OK


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lineup", description="Line-up elections: rules, axioms, experiments.")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    def budget_flags(p):
        p.add_argument("--winner-cap", type=int, default=DEFAULT_WINNER_CAP)
        p.add_argument("--node-limit", type=int, default=None)

    p = sub.add_parser("solve", help="winning line-ups of one election")
    p.add_argument("election", help="JSON or CSV election file")
    p.add_argument("--rule", required=True, help=f"{', '.join(RULE_NAMES)} or owa:w1,w2,...")
    p.add_argument("--json", action="store_true")
    budget_flags(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("axioms", help="verdict matrix from fixtures and random search")
    p.add_argument("--rule", default="all")
    p.add_argument("--axiom", default="all")
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--m-max", type=int, default=5)
    p.add_argument("--q-max", type=int, default=5)
    p.add_argument("--witness-dir")
    p.add_argument("--include-max-sum", action="store_true", help="add the egalitarian max-sum row")
    p.set_defaults(func=cmd_axioms)

    p = sub.add_parser("experiment", help="rule comparison sweep from a JSON config")
    p.add_argument("config")
    p.add_argument("--out")
    p.add_argument("--rules", help="comma-separated, overrides the config")
    p.add_argument("--jobs", type=int)
    p.add_argument("--deterministic", action="store_true",
                   help="omit the timestamp line and report runtime_ms as 0")
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("generate", help="synthetic elections as JSON files")
    p.add_argument("--model", required=True, type=str.upper, choices=datagen.MODELS)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--no-normalize", action="store_true")
    p.add_argument("--out", default="elections")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("ingest", help="team elections from a player CSV")
    p.add_argument("csv")
    p.add_argument("--positions", help="comma-separated position columns")
    p.add_argument("--preset", choices=sorted(ingest.PRESETS))
    p.add_argument("--top-n", type=int)
    p.add_argument("--group")
    p.add_argument("--out", default="elections")
    p.set_defaults(func=cmd_ingest)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"error: search budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ElectionError, RuleError, ingest.IngestError, InputError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
