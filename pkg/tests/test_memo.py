import json

from finalg.memo import MEMO_FORMAT, MEMO_VERSION, EnumerationMemo, enumerate_up_to
from finalg.monads import enumerate_t_algebras, monad

WORD = monad("Set", "Word")


def test_memo_round_trip(tmp_path):
    path = tmp_path / "memo.json"
    memo = EnumerationMemo(path)
    first = enumerate_up_to(WORD, 3, memo=memo)
    memo.save()
    data = json.loads(path.read_text())
    assert data["format"] == MEMO_FORMAT and data["version"] == MEMO_VERSION
    assert sorted(data["entries"]) == ["Set:Word/1", "Set:Word/2", "Set:Word/3"]
    again = enumerate_up_to(WORD, 3, memo=EnumerationMemo(path))
    assert [a.algebra for a in again] == [a.algebra for a in first]


def test_memo_matches_direct_enumeration(tmp_path):
    memo = EnumerationMemo(tmp_path / "m.json")
    pos = monad("Pos", "Word")
    assert [a.algebra for a in memo.enumerate(pos, 2)] == [a.algebra for a in enumerate_t_algebras(pos, 2)]


def test_memo_ignores_other_versions(tmp_path):
    path = tmp_path / "memo.json"
    path.write_text(json.dumps({"format": MEMO_FORMAT, "version": MEMO_VERSION + 1,
                                "entries": {"Set:Word/2": ["garbage"]}}))
    memo = EnumerationMemo(path)
    assert memo.entries == {}
    assert len(memo.enumerate(WORD, 2)) == 2
    memo.save()
    assert json.loads(path.read_text())["version"] == MEMO_VERSION


def test_memo_ignores_corrupt_file(tmp_path):
    path = tmp_path / "memo.json"
    path.write_text("{not json")
    assert EnumerationMemo(path).entries == {}


def test_in_memory_memo_does_not_write(tmp_path):
    memo = EnumerationMemo()
    memo.enumerate(WORD, 2)
    memo.save()
    assert list(tmp_path.iterdir()) == []
