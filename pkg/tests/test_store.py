import json

import pytest

from cube_kappa.cube import build_kary_cube
from cube_kappa.store import (
    ResultCache,
    TaskRecord,
    cache_key,
    default_cache_dir,
    export_graph,
    format_graph,
    parse_graph,
    read_graph,
)


def test_record_roundtrip_and_field_order():
    rec = TaskRecord("extra", {"k": 3, "n": 2}, {"value": 5, "cert": ["00", "01"]}, "0.1.0", 1.5)
    text = rec.to_json()
    assert list(json.loads(text)) == ["task", "version", "params", "result", "duration"]
    assert TaskRecord.from_json(text) == rec


def test_cache_key_canonical():
    a = cache_key("extra", {"k": 3, "n": 3, "h": 1}, "1")
    b = cache_key("extra", {"h": 1, "n": 3, "k": 3}, "1")
    assert a == b
    assert a != cache_key("extra", {"h": 1, "n": 3, "k": 3}, "2")
    assert a != cache_key("kappa", {"h": 1, "n": 3, "k": 3}, "1")


def test_cache_store_lookup_corrupt(tmp_path, caplog):
    cache = ResultCache(tmp_path / "c")
    rec = TaskRecord("kappa", {"n": 2}, {"kappa": 4}, "0.1.0", 0.1)
    assert cache.lookup("abc") is None
    path = cache.store("abc", rec)
    assert path.exists() and cache.lookup("abc") == rec
    assert not list((tmp_path / "c").glob(".tmp-*"))
    path.write_text("{not json")
    with caplog.at_level("WARNING"):
        assert cache.lookup("abc") is None
    assert "corrupt" in caplog.text
    assert cache.clear() == 1 and cache.entries() == []


def test_cache_env(monkeypatch, tmp_path):
    monkeypatch.setenv("CUBE_KAPPA_CACHE", str(tmp_path))
    assert default_cache_dir() == tmp_path


def test_edgelist_examples():
    g1, _ = build_kary_cube(3, 1)
    assert format_graph(g1) == "p 3 3\n0 1\n0 2\n1 2\n"
    g2, _ = build_kary_cube(3, 2)
    lines = format_graph(g2).splitlines()
    assert lines[0] == "p 9 18" and len(lines) == 19
    g3, _ = build_kary_cube(3, 3)
    assert format_graph(g3, "dimacs").splitlines()[0] == "p edge 27 81"
    with pytest.raises(ValueError):
        format_graph(g1, "xml")


@pytest.mark.parametrize("fmt", ["edgelist", "dimacs"])
def test_export_reimport_is_identical(tmp_path, fmt):
    g, _ = build_kary_cube(3, 3)
    path = tmp_path / f"q3.{fmt}"
    export_graph(g, fmt, path)
    back = read_graph(path)
    assert back == g
    assert format_graph(back, fmt) == path.read_text()


def test_parse_errors():
    with pytest.raises(ValueError):
        parse_graph("0 1\n")
    with pytest.raises(ValueError):
        parse_graph("p 3 2\n0 1\n")
    with pytest.raises(ValueError):
        parse_graph("p 3 1\n0 1 2\n")
    with pytest.raises(ValueError):
        parse_graph("")
    assert parse_graph("c comment\np edge 2 1\ne 1 2\n").edge_count == 1
