import json

import pytest

import negseq

EXAMPLE = ["baacaac", "ababccbb"]


@pytest.fixture
def db():
    return negseq.Database.from_lines(EXAMPLE)


def test_database_shape(db):
    assert len(db) == 2
    assert db.total_length == 15
    assert db.alphabet == ["b", "a", "c"]
    assert db.lines() == EXAMPLE


def test_mine_example(db):
    result = negseq.mine(db, "0.13", (0, 1))
    names = {row["pattern"] for row in result.patterns()}
    assert names == {"a", "b", "c", "a[0,1]a", "a[0,1,!a]a", "a[0,1]c", "a[0,1,!b]c", "a[0,1,!c]c"}
    assert len(result) == 8
    assert len(negseq.mine(db, "0.13", (0, 1), positives_only=True)) == 5
    levels = result.stats()
    assert levels[2]["candidates"] == 10
    assert levels[2]["baseline"] == {"join": 10, "enumeration": 60, "classic": 20}


def test_outputs_are_deterministic(db):
    one = negseq.mine(db, "0.13", (0, 1))
    four = negseq.mine(db, "0.13", (0, 1), workers=4)
    assert one.to_csv() == four.to_csv()
    assert one.to_json() == four.to_json()
    assert one.to_csv().splitlines()[0] == "pattern,length,support,ofs,rate"
    assert json.loads(one.to_json())["stats"]["patterns"] == 8


def test_support(db):
    r = negseq.support(db, "a[0,1]a[0,1,!b]c", (0, 1), occurrences=True)
    assert r["support"] == 3
    assert r["per_sequence"] == [3, 0]
    assert r["ofs"] == 60
    assert r["rate"] == "0.05"
    assert r["occurrences"][0] == [(2, 3, 4), (3, 5, 7), (5, 6, 7)]


def test_split(db):
    assert db.split(4).lines() == ["baac", "aac", "abab", "ccbb"]


def test_ofs_total_is_exact():
    assert negseq.ofs_total(15, 2, 3) == 60
    assert negseq.ofs_total(1, 16, 32) == 16**31
    assert negseq.ofs_total(3, 2**20, 6) == 3 * 2**100
    with pytest.raises(negseq.OverflowError):
        negseq.ofs_total(1, 16, 33)


def test_errors(db, tmp_path):
    with pytest.raises(negseq.ConfigError):
        negseq.mine(db, "1.5", (0, 1))
    with pytest.raises(negseq.ParseError):
        negseq.mine(db, "abc", (0, 1))
    with pytest.raises(negseq.ParseError):
        negseq.support(db, "a[0,2]a", (0, 1))
    with pytest.raises(negseq.IoError):
        negseq.Database.read(str(tmp_path / "missing.txt"))
    with pytest.raises(negseq.Error):
        negseq.support(db, "z", (0, 1))


def test_read_fasta(tmp_path):
    path = tmp_path / "x.fa"
    path.write_text(">x\nba\nac\n")
    fasta = negseq.Database.read(str(path), format="fasta")
    assert fasta.lines() == ["baac"]
