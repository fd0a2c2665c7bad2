import json
from math import comb

import pytest

from cube_kappa import __version__
from cube_kappa.cli import run_command


@pytest.fixture
def run(tmp_path, capsys):
    cache = str(tmp_path / "cache")

    def go(*argv, cache_dir=cache):
        code = run_command([*argv, "--cache-dir", cache_dir] if argv[0] != "bogus" else list(argv))
        out, err = capsys.readouterr()
        return code, out, err

    return go


def record(out):
    return json.loads(out)


def test_build(run):
    code, out, _ = run("build", "--k", "3", "--n", "2")
    rec = record(out)
    assert code == 0 and rec["result"] == {"vertex_count": 9, "edge_count": 18, "degrees": [4]}
    assert rec["version"] == __version__


def test_kappa_and_super(run):
    code, out, _ = run("kappa", "--n", "3", "--super")
    assert code == 0 and record(out)["result"] == {"kappa": 6, "min_degree": 6, "super_connected": True}


def test_extra_exhaustive_and_cache(run, tmp_path, caplog):
    code, out, _ = run("extra", "--n", "2", "--h", "1")
    first = record(out)
    assert code == 0
    assert first["result"]["value"] == 5 and first["result"]["evidence"]["kind"] == "Exhaustive"
    assert first["result"]["certificate"]["cut"] == ["00", "01", "10", "11", "22"]
    code, out, _ = run("extra", "--n", "2", "--h", "1", "-v")
    assert record(out) == first  # served from the cache, duration included
    entries = list((tmp_path / "cache").glob("*.json"))
    assert len(entries) == 1
    entries[0].write_text("garbage")
    with caplog.at_level("WARNING"):
        code, out, err = run("extra", "--n", "2", "--h", "1")
    assert code == 0 and "corrupt" in caplog.text
    assert record(out)["result"] == first["result"]
    assert json.loads(entries[0].read_text())["result"] == first["result"]


def test_force_recomputes(run, monkeypatch):
    import cube_kappa.cli as cli

    run("kappa", "--n", "2")
    calls = []
    original = cli.TASKS["kappa"]
    monkeypatch.setitem(cli.TASKS, "kappa", lambda a: calls.append(1) or original(a))
    run("kappa", "--n", "2")
    assert calls == []
    run("kappa", "--n", "2", "--force")
    assert calls == [1]


def test_version_bump_recomputes(run, monkeypatch):
    import cube_kappa.cli as cli

    run("kappa", "--n", "2")
    calls = []
    original = cli.TASKS["kappa"]
    monkeypatch.setitem(cli.TASKS, "kappa", lambda a: calls.append(1) or original(a))
    monkeypatch.setattr(cli, "__version__", "9.9.9")
    code, out, _ = run("kappa", "--n", "2")
    assert calls == [1] and record(out)["version"] == "9.9.9"


def test_extra_fragment(run):
    code, out, _ = run("extra", "--n", "4", "--h", "3", "--mode", "fragment")
    res = record(out)["result"]
    assert code == 0 and res["value"] == 20 and res["evidence"]["kind"] == "FragmentExact"


def test_extra_inconclusive_exit(run):
    code, out, _ = run("extra", "--n", "3", "--h", "3", "--max-work", "1000")
    assert code == 3 and record(out)["result"]["evidence"]["kind"] == "Inconclusive"
    code, out, _ = run("extra", "--n", "4", "--h", "3", "--mode", "fragment", "--max-work", "3")
    assert code == 3


def test_construct(run):
    code, out, _ = run("construct", "--n", "5", "--h", "3")
    res = record(out)["result"]
    assert code == 0 and res["cut_size"] == 28 and res["verdict"] == "pass"
    assert res["fragment"] == ["00000", "01000", "01100", "00100"]
    assert res["fragment_shape"] == "Cycle4"


def test_verify_claims(run):
    code, out, _ = run("verify", "--claim", "lemma33", "--n", "2")
    res = record(out)["result"]
    assert code == 0 and res["verdict"] == "pass" and res["checked_count"] == 256
    code, out, _ = run("verify", "--claim", "lemma31", "--n", "3")
    assert code == 0 and record(out)["result"]["checked_count"] == 351
    code, out, _ = run("verify", "--claim", "structure", "--n", "2")
    assert code == 0
    code, out, _ = run("verify", "--claim", "thm35", "--n", "4")
    assert code == 0 and record(out)["result"]["construction"]["cut_size"] == 20
    code, out, _ = run("verify", "--claim", "lemma36", "--n", "4", "--samples", "50", "--seed", "3")
    assert code == 0 and record(out)["result"]["checked_count"] == 50
    code, out, _ = run("verify", "--claim", "thm37", "--n", "4", "--samples", "50")
    assert code == 0 and record(out)["result"]["scope"]["mode"] == "sample"


def test_verify_violation_exit(run):
    code, out, _ = run("verify", "--claim", "lemma33", "--n", "3", "--bound", "9")
    res = record(out)["result"]
    assert code == 1 and res["verdict"] == "fail" and res["violations"]
    assert res["violations"][0]["pattern"] == "Violation"


def test_usage_errors(run):
    assert run("bogus")[0] == 2
    code, _, err = run("extra", "--n", "3")
    assert code == 2 and "--h" in err
    code, _, err = run("construct", "--n", "2", "--h", "3")
    assert code == 2 and "n >= 3" in err
    assert run("verify", "--claim", "lemma36", "--n", "3")[0] == 2
    assert run("kappa", "--n", "3", "--unknown")[0] == 2


def test_export(run, tmp_path):
    code, out, _ = run("export", "--k", "3", "--n", "1")
    assert code == 0 and out == "p 3 3\n0 1\n0 2\n1 2\n"
    dest = tmp_path / "q3.dimacs"
    code, out, _ = run("export", "--n", "3", "--graph-format", "dimacs", "--out", str(dest))
    assert code == 0 and dest.read_text().startswith("p edge 27 81\n")
    assert record(out)["result"]["edge_count"] == 81


def test_table_and_out(run, tmp_path):
    code, out, _ = run("kappa", "--n", "2", "--format", "table")
    assert code == 0 and "result.kappa" in out and "4" in out
    dest = tmp_path / "rec.json"
    code, out, _ = run("kappa", "--n", "2", "--out", str(dest), "--no-cache")
    assert out == "" and record(dest.read_text())["result"]["kappa"] == 4


def test_cache_command(run, tmp_path):
    run("kappa", "--n", "2")
    code, out, _ = run("cache", "info")
    assert record(out)["result"]["entries"] == 1
    code, out, _ = run("cache", "clear")
    assert record(out)["result"]["removed"] == 1


def test_workers_not_in_record(run):
    _, a, _ = run("verify", "--claim", "lemma33", "--n", "2", "--workers", "1", "--no-cache")
    _, b, _ = run("verify", "--claim", "lemma33", "--n", "2", "--workers", "3", "--no-cache")
    ra, rb = record(a), record(b)
    ra.pop("duration"), rb.pop("duration")
    assert ra == rb and "workers" not in ra["params"]
    assert ra["result"]["checked_count"] == sum(comb(9, s) for s in range(5))
