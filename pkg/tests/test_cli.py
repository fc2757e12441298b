import csv
import json

import pytest

from lineup.cli import EXIT_BUDGET, EXIT_INPUT, EXIT_OK, EXIT_PARTIAL, RECORD_FIELDS, main
from lineup.fixtures import e1, intro_election
from lineup.model import dump_election, load_election


@pytest.fixture
def files(tmp_path):
    (tmp_path / "intro.json").write_text(dump_election(intro_election()), encoding="utf-8")
    (tmp_path / "e1.json").write_text(dump_election(e1()), encoding="utf-8")
    return tmp_path


def test_solve_utilitarian(files, capsys):
    assert main(["solve", str(files / "intro.json"), "--rule", "utilitarian", "--json"]) == EXIT_OK
    out = json.loads(capsys.readouterr().out)
    assert out["objective"] == "21"
    assert out["winners"][0]["assignment"] == {"L": "Götze", "C": "Özil", "R": "Müller"}


def test_solve_egalitarian_ties(files, capsys):
    assert main(["solve", str(files / "e1.json"), "--rule", "egalitarian"]) == EXIT_OK
    assert "winners: 2" in capsys.readouterr().out


def test_solve_rejects_decimal_weights(files, capsys):
    assert main(["solve", str(files / "intro.json"), "--rule", "owa:1,0.5,0.3333"]) == EXIT_INPUT
    assert "exact" in capsys.readouterr().err
    assert main(["solve", str(files / "intro.json"), "--rule", "owa:1,1/2,1/3"]) == EXIT_OK


def test_solve_bad_file(files):
    (files / "bad.json").write_text("{", encoding="utf-8")
    assert main(["solve", str(files / "bad.json"), "--rule", "utilitarian"]) == EXIT_INPUT
    assert main(["solve", str(files / "missing.json"), "--rule", "utilitarian"]) == EXIT_INPUT


def test_solve_budget(tmp_path):
    rows = [[(7 * c + 3 * p) % 11 for p in range(7)] for c in range(8)]
    from lineup.model import Election

    (tmp_path / "big.json").write_text(dump_election(Election.from_matrix(rows)), encoding="utf-8")
    assert main(["solve", str(tmp_path / "big.json"), "--rule", "harmonic", "--node-limit", "2"]) == EXIT_BUDGET


def test_axioms_fixture_witness(tmp_path, capsys):
    wd = tmp_path / "w"
    assert main(["axioms", "--rule", "seq-min-first", "--axiom", "lineup-enlargement",
                 "--trials", "5", "--witness-dir", str(wd)]) == EXIT_OK
    out = capsys.readouterr().out
    assert "violated_weak" in out and "fixture:lineup-enlargement:min-first" in out
    doc = json.loads((wd / "seq-min-first__lineup-enlargement.json").read_text())
    assert doc["witness"]["winners"][1] == [["b", "f", "a", "e", "c"]]


def test_axioms_trivial_holds(capsys):
    assert main(["axioms", "--rule", "utilitarian", "--axiom", "monotonicity", "--trials", "1"]) == EXIT_OK
    assert "strong_holds_sofar" in capsys.readouterr().out


def test_axioms_bad_name(capsys):
    assert main(["axioms", "--axiom", "nonsense", "--trials", "1"]) == EXIT_INPUT


def test_generate(tmp_path):
    out = tmp_path / "g"
    assert main(["generate", "--model", "m2", "--m", "10", "--q", "10", "--count", "3", "--seed", "1",
                 "--out", str(out)]) == EXIT_OK
    names = sorted(p.name for p in out.iterdir())
    assert names == ["m2-0.json", "m2-1.json", "m2-2.json"]
    first = (out / "m2-0.json").read_bytes()
    assert main(["generate", "--model", "m2", "--m", "10", "--q", "10", "--count", "3", "--seed", "1",
                 "--out", str(out)]) == EXIT_OK
    assert (out / "m2-0.json").read_bytes() == first
    assert load_election(out / "m2-0.json").q == 10
    assert main(["generate", "--model", "m1", "--m", "5", "--q", "2", "--out", str(out)]) == EXIT_INPUT
    assert main(["generate", "--model", "m2", "--m", "20", "--q", "10", "--out", str(out)]) == EXIT_OK


def test_ingest(tmp_path):
    p = tmp_path / "players.csv"
    p.write_text("player_id,group,L,C,R\nMüller,GER,5,10,9\nÖzil,GER,3,8,5\nGötze,GER,4,7,4\nx,ESP,1,1,1\n",
                 encoding="utf-8")
    out = tmp_path / "e"
    assert main(["ingest", str(p), "--positions", "L,C,R", "--out", str(out)]) == EXIT_OK
    assert load_election(out / "GER.json") == intro_election()
    assert not (out / "ESP.json").exists()
    assert main(["ingest", str(p), "--positions", "L,C,R", "--group", "ESP", "--out", str(out)]) == EXIT_INPUT


def _experiment(tmp_path, source, rules, extra=()):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"source": source, "rules": rules}), encoding="utf-8")
    out = tmp_path / "out"
    code = main(["experiment", str(cfg), "--out", str(out), *extra])
    return code, out


def test_experiment_outputs(tmp_path):
    src = {"generator": {"model": "M2", "m": 5, "q": 4, "count": 4, "seed": 3}}
    code, out = _experiment(tmp_path, src, ["utilitarian", "egalitarian", "seq-max-first"], ["--deterministic"])
    assert code == EXIT_OK
    rows = list(csv.DictReader((out / "records.csv").open()))
    assert tuple(rows[0]) == RECORD_FIELDS
    assert len(rows) == 12
    assert all(float(r["reasonable_dissatisfaction"]) == 0 for r in rows if r["rule"] == "seq-max-first")
    first = (out / "records.csv").read_bytes()
    summary = (out / "summary.csv").read_bytes()
    code, out = _experiment(tmp_path, src, ["utilitarian", "egalitarian", "seq-max-first"], ["--deterministic"])
    assert (out / "records.csv").read_bytes() == first and (out / "summary.csv").read_bytes() == summary
    model = list(csv.DictReader((out / "model_metrics.csv").open()))
    assert len(model) == 4 and all(float(r["social_conflict"]) >= 0 for r in model)


def test_experiment_timestamp_line(tmp_path):
    src = {"generator": {"model": "M2", "m": 3, "q": 3, "count": 1, "seed": 3}}
    _, out = _experiment(tmp_path, src, ["utilitarian"])
    assert (out / "records.csv").read_text().startswith("# generated ")


def test_experiment_partial_failure(tmp_path):
    src = {"generator": {"model": "M2", "m": 8, "q": 7, "count": 2, "seed": 3}}
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"source": src, "rules": ["utilitarian", "harmonic"], "node_limit": 1}))
    assert main(["experiment", str(cfg), "--out", str(tmp_path / "o"), "--deterministic"]) == EXIT_PARTIAL
    rows = list(csv.DictReader((tmp_path / "o" / "records.csv").open()))
    assert {r["rule"] for r in rows} == {"utilitarian"}


def test_experiment_csv_source(tmp_path):
    p = tmp_path / "players.csv"
    p.write_text("player_id,group,L,C,R\nMüller,GER,5,10,9\nÖzil,GER,3,8,5\nGötze,GER,4,7,4\n", encoding="utf-8")
    src = {"csv": str(p), "positions": ["L", "C", "R"], "top_n": 3}
    code, out = _experiment(tmp_path, src, ["utilitarian"], ["--deterministic"])
    assert code == EXIT_OK
    row = next(csv.DictReader((out / "records.csv").open()))
    assert row["election_id"] == "GER" and float(row["normalized_sum"]) == pytest.approx(0.875)


def test_experiment_bad_config(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text("{}")
    assert main(["experiment", str(cfg)]) == EXIT_INPUT
