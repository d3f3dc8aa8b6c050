import json
import logging
import os

import pytest

import ncmobius.verify as verify
from ncmobius.cache import ResultCache
from ncmobius.cli import main
from ncmobius.verify import TABLE_FIELDS, cmd_table, cmd_verify, grid_types


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_verify_pass(capsys):
    code, out, _ = run(capsys, "verify", "--type", "A2", "-k", "2", "--no-cache", "--format", "json")
    assert code == 0
    d = json.loads(out)
    assert d["lhs_mobius_upper"] == d["lhs_mobius_lower"] == d["lhs_falling_chain"] == 5
    assert d["rhs_formula"] == 5 and d["all_equal"]
    assert d["details"]["sign_check"]["supported_signs"] == ["(-1)^(n-1)"]


@pytest.mark.parametrize("argv,value", [
    (["--type", "A", "--rank", "2", "-k", "1"], 2),
    (["--type", "B2", "-k", "2"], 7),
    (["--type", "I2", "--m", "5", "-k", "2"], 9),
])
def test_verify_values(capsys, argv, value):
    code, out, _ = run(capsys, "verify", *argv, "--no-cache", "--format", "json")
    assert code == 0 and json.loads(out)["rhs_formula"] == value


def test_verify_text_and_csv(capsys):
    code, out, _ = run(capsys, "verify", "--type", "A1", "-k", "2", "--no-cache")
    assert code == 0 and "PASS" in out
    code, out, _ = run(capsys, "verify", "--type", "A1", "-k", "2", "--no-cache", "--format", "csv")
    assert out.splitlines()[0] == ",".join(TABLE_FIELDS)


def test_verify_gamma_perm(capsys):
    code, out, _ = run(capsys, "verify", "--type", "A3", "-k", "2", "--gamma-perm", "2,0,1",
                       "--no-cache", "--format", "json")
    d = json.loads(out)
    assert code == 0 and d["details"]["gamma_order"] == [2, 0, 1]


@pytest.mark.parametrize("argv", [
    ["verify", "--type", "E6", "-k", "1", "--no-cache"],
    ["verify", "--type", "D3", "-k", "1", "--no-cache"],
    ["verify", "--type", "A2", "-k", "0", "--no-cache"],
    ["verify", "--type", "D4", "-k", "3", "--max-elements", "100", "--no-cache"],
])
def test_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.startswith("error:")


def test_mismatch_exit_1(capsys, monkeypatch):
    monkeypatch.setattr(verify, "positive_fuss_catalan", lambda ctype, k: 10 ** 6 * k)
    code, out, _ = run(capsys, "verify", "--type", "A2", "-k", "2", "--no-cache")
    assert code == 1 and "FAIL" in out


def test_table_csv(capsys):
    code, out, _ = run(capsys, "table", "--families", "A", "--max-rank", "2", "--max-k", "2",
                       "--format", "csv", "--no-cache")
    lines = out.splitlines()
    assert code == 0
    assert lines[0] == ",".join(TABLE_FIELDS)
    assert lines[0].startswith("family,rank,k,lhs,rhs,pass")
    assert len(lines) == 5
    assert all(",True," in line for line in lines[1:])


def test_table_empty(capsys):
    code, out, _ = run(capsys, "table", "--families", "", "--format", "csv", "--no-cache")
    assert code == 0 and out.splitlines() == [",".join(TABLE_FIELDS)]


def test_table_scale_exceeded():
    rows = cmd_table(grid_types(["D"], 4), 2, max_elements=60)
    assert [r["status"] for r in rows] == ["ok", "scale_exceeded"]
    assert rows[1]["pass"] == ""


def test_table_parallel_matches_serial():
    types = grid_types(["A", "I2"], 2, max_m=4)
    strip = lambda rows: [{k: v for k, v in r.items() if k != "seconds"} for r in rows]
    assert strip(cmd_table(types, 2, jobs=2)) == strip(cmd_table(types, 2, jobs=1))


def test_grid_types():
    assert [str(t) for t in grid_types(["A", "B", "D", "I2", "H3"], 3, max_m=4)] == \
        ["A1", "A2", "A3", "B2", "B3", "I2(3)", "I2(4)", "H3"]


def test_export_nc_dot(capsys):
    code, out, _ = run(capsys, "export", "nc", "--type", "A2", "--format", "dot")
    assert code == 0 and out.count("->") == 6


def test_export_group_json(capsys):
    code, out, _ = run(capsys, "export", "group", "--type", "A1")
    d = json.loads(out)
    assert code == 0 and d["order"] == 2 and len(d["elements"]) == 2
    assert d["absolute_lengths"] == [0, 1]


def test_export_labeling(capsys, tmp_path):
    target = tmp_path / "lab.json"
    code, _, _ = run(capsys, "export", "labeling", "--type", "A2", "-k", "2", "--out", str(target))
    d = json.loads(target.read_text())
    assert code == 0 and len(d["labels"]) == 7 and d["labels"][3] == "θ"
    assert len(d["elements"]) == 13


def test_export_nck(capsys):
    code, out, _ = run(capsys, "export", "nck", "--type", "A2", "-k", "2")
    assert code == 0 and len(json.loads(out)["elements"]) == 12
    code, out, _ = run(capsys, "export", "nck", "--type", "A2", "-k", "2", "--format", "dot")
    assert code == 0 and "digraph" in out


def test_out_unwritable(capsys, tmp_path):
    code, _, err = run(capsys, "export", "group", "--type", "A1", "--out",
                       str(tmp_path / "missing" / "x.json"))
    assert code == 2 and "cannot write" in err


# -- cache ------------------------------------------------------------------------------

def test_cache_hit(tmp_path):
    cache = ResultCache(tmp_path)
    a = cmd_verify("A2", 2, cache=cache)
    b = cmd_verify("A2", 2, cache=cache)
    assert a.deterministic_dict() == b.deterministic_dict()
    assert list(b.timings) == ["cache_load"]
    assert len(list(tmp_path.glob("*.json"))) == 1


def test_cache_env_var(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("NCP_CACHE_DIR", str(tmp_path))
    assert run(capsys, "verify", "--type", "A1", "-k", "1")[0] == 0
    assert len(list(tmp_path.glob("*.json"))) == 1


def test_cache_corrupt_entry(tmp_path, caplog):
    cache = ResultCache(tmp_path)
    ref = cmd_verify("A1", 2, cache=cache)
    (path,) = tmp_path.glob("*.json")
    path.write_text("{not json")
    with caplog.at_level(logging.WARNING):
        again = cmd_verify("A1", 2, cache=cache)
    assert "corrupt" in caplog.text
    assert again.deterministic_dict() == ref.deterministic_dict()
    assert "cache_load" not in again.timings
    json.loads(path.read_text())


@pytest.mark.skipif(os.geteuid() == 0, reason="root ignores directory permissions")
def test_cache_unwritable_permissions(tmp_path, caplog):
    d = tmp_path / "ro"
    d.mkdir()
    d.chmod(0o500)
    try:
        with caplog.at_level(logging.WARNING):
            rep = cmd_verify("A1", 1, cache=ResultCache(d))
    finally:
        d.chmod(0o700)
    assert rep.all_equal and "not writable" in caplog.text


def test_cache_unwritable(tmp_path, caplog):
    blocker = tmp_path / "file"
    blocker.write_text("")
    with caplog.at_level(logging.WARNING):
        rep = cmd_verify("A1", 1, cache=ResultCache(blocker / "sub"))
    assert rep.all_equal and "not writable" in caplog.text


def test_cache_version_miss(tmp_path, monkeypatch):
    cache = ResultCache(tmp_path)
    cmd_verify("A1", 1, cache=cache)
    monkeypatch.setattr(verify, "__version__", "999")
    rep = cmd_verify("A1", 1, cache=cache)
    assert "cache_load" not in rep.timings
    assert len(list(tmp_path.glob("*.json"))) == 2
