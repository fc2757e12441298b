import pytest

from lineup.ingest import FORMATION_10, IngestError, build_election, load_players


def write(tmp_path, text):
    p = tmp_path / "players.csv"
    p.write_text(text, encoding="utf-8")
    return p


def test_intro_round_trip(tmp_path):
    p = write(tmp_path, "player_id,group,L,C,R,age\nMüller,GER,5,10,9,30\nÖzil,GER,3,8,5,31\nGötze,GER,4,7,4,27\n")
    players = load_players(p, ["L", "C", "R"])
    assert [x.player_id for x in players] == ["Müller", "Özil", "Götze"]
    e = build_election(players, "GER", 3, ["L", "C", "R"])
    assert e.score("Müller", "C") == 10


def test_missing_column(tmp_path):
    p = write(tmp_path, "player_id,group,L,R\nx,G,1,2\n")
    with pytest.raises(IngestError, match="'C'"):
        load_players(p, ["L", "C", "R"])


def test_malformed_number_has_line(tmp_path):
    p = write(tmp_path, "player_id,group,L\nx,G,1\ny,G,abc\n")
    with pytest.raises(IngestError, match="line 3"):
        load_players(p, ["L"])


def test_duplicate_id(tmp_path):
    p = write(tmp_path, "player_id,group,L\nx,G,1\nx,G,2\n")
    with pytest.raises(IngestError, match="duplicate"):
        load_players(p, ["L"])


def test_groups_preserved(tmp_path):
    rows = "".join(f"p{i},{'A' if i < 6 else 'B'},{i}\n" for i in range(12))
    players = load_players(write(tmp_path, "player_id,group,L\n" + rows), ["L"])
    assert [p.group for p in players].count("A") == 6


def _team(n, low_id=None):
    rows = []
    for i in range(n):
        rows.append((f"id{i:02d}", [str(10 + i)] * 10))
    return rows


def test_top_n_drops_lowest(tmp_path):
    cols = [f"x{j}" for j in range(10)]
    lines = ["player_id,group," + ",".join(cols)]
    for i in range(11):
        lines.append(f"id{i:02d},T," + ",".join([str(10 + i)] * 10))
    players = load_players(write(tmp_path, "\n".join(lines) + "\n"), cols)
    e = build_election(players, "T", 10, cols)
    assert e.m == 10 and "id00" not in e.candidates


def test_cutoff_tie_prefers_smaller_id(tmp_path):
    p = write(tmp_path, "player_id,group,L,R\nzed,T,1,1\namy,T,1,1\nbob,T,5,5\n")
    e = build_election(load_players(p, ["L", "R"]), "T", 2, ["L", "R"])
    assert e.candidates == ("bob", "amy")


def test_all_players_when_top_n_is_group_size(tmp_path):
    p = write(tmp_path, "player_id,group,L,R\na,T,1,2\nb,T,2,1\nc,T,0,0\n")
    assert build_election(load_players(p, ["L", "R"]), "T", 3, ["L", "R"]).m == 3


def test_insufficient_players(tmp_path):
    p = write(tmp_path, "player_id,group,L,R\na,T,1,2\n")
    with pytest.raises(IngestError, match="needs at least"):
        build_election(load_players(p, ["L", "R"]), "T", 2, ["L", "R"])


def test_formation_preset():
    assert len(FORMATION_10) == 10 and len(set(FORMATION_10)) == 10
