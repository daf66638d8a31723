import io
import json

import pytest

from finfish.core.errors import PreconditionError
from finfish.data.cache_manager import CacheManager
from finfish.data.formats import FishRecord, bfile_lines, parse_bfile, write_jsonl
from finfish.data.tables import FISH_FIELDS, JointTable


def small_table() -> JointTable:
    return JointTable.from_keys(FISH_FIELDS, [(3, 1, 2, 1, 3), (2, 1, 1, 1, 2), (3, 1, 1, 2, 3)])


def test_table_marginals_and_order():
    table = small_table()
    assert list(table) == [(2, 1, 1, 1, 2), (3, 1, 1, 2, 3), (3, 1, 2, 1, 3)]
    assert table.marginal("size") == {2: 1, 3: 2}
    assert table.marginal("lsize", "rsize") == {(1, 1): 1, (1, 2): 1, (2, 1): 1}
    assert table.weighted("size", lambda row: row["tails"]) == {2: 1, 3: 2}
    assert table.filter(size=2).total() == 1


def test_table_csv_is_sorted():
    assert small_table().to_csv() == (
        "size,tails,rsize,lsize,fin,count\n"
        "2,1,1,1,2,1\n"
        "3,1,1,2,3,1\n"
        "3,1,2,1,3,1\n"
    )


def test_table_json_round_trip_and_difference():
    table = small_table()
    again = JointTable.from_json(json.loads(json.dumps(table.to_json())))
    assert again == table
    again.add((4, 2, 2, 2, 3))
    assert table.first_difference(again) == ((4, 2, 2, 2, 3), 0, 1)


def test_table_rejects_wrong_width():
    with pytest.raises(PreconditionError):
        small_table().add((1, 2))


def test_jsonl_writes_one_object_per_line():
    stream = io.StringIO()
    record = FishRecord(term="A", code="F,F,F,F", size=2, tails=1, rsize=1, lsize=1, fin=2, fin_word="LR", area=1)
    assert write_jsonl([record, record], stream) == 2
    lines = stream.getvalue().splitlines()
    assert len(lines) == 2
    assert json.loads(lines[0])["code"] == "F,F,F,F"
    assert "planar" not in lines[0]


def test_bfile_format():
    text = bfile_lines([1, 2, 6])
    assert text == "1 1\n2 2\n3 6\n"
    assert parse_bfile("# comment\n" + text) == {1: 1, 2: 2, 3: 6}
    assert bfile_lines([1, 1], offset=0) == "0 1\n1 1\n"


def test_cache_disabled_without_directory():
    cache = CacheManager(directory=None)
    calls = []
    assert cache.fetch("cmd", {"n": 1}, lambda: calls.append(1) or [1]) == [1]
    assert cache.fetch("cmd", {"n": 1}, lambda: calls.append(1) or [1]) == [1]
    assert len(calls) == 2
    assert not cache.enabled


def test_cache_hit_and_version_bump(tmp_path):
    cache = CacheManager(directory=tmp_path, version="1")
    calls = []

    def produce():
        calls.append(1)
        return {"rows": [[1, 2]]}

    first = cache.fetch("fish table", {"max_size": 9}, produce)
    second = cache.fetch("fish table", {"max_size": 9}, produce)
    assert first == second
    assert len(calls) == 1
    assert cache.hit_rate == 0.5

    bumped = CacheManager(directory=tmp_path, version="2")
    bumped.fetch("fish table", {"max_size": 9}, produce)
    assert len(calls) == 2
    assert bumped.clear() == 2


def test_corrupt_cache_entry_is_recomputed(tmp_path):
    cache = CacheManager(directory=tmp_path, version="1")
    key = cache.key("cmd", {})
    (tmp_path / f"{key}.json").write_text("{not json", encoding="utf-8")
    assert cache.fetch("cmd", {}, lambda: {"ok": True}) == {"ok": True}
    assert json.loads((tmp_path / f"{key}.json").read_text(encoding="utf-8")) == {"ok": True}
