import json

import pytest

from primetop import cli


def run_main(argv):
    return cli.main(argv)


def test_build_json(capsys):
    assert run_main(["build", "--kind", "prime", "--n", "30", "--format", "json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["kind"] == "prime" and data["param"] == 30
    assert 30 in data["vertices"] and [2, 6] in data["edges"]


def test_build_dot_divisor(capsys):
    assert run_main(["build", "--kind", "divisor", "--n", "210", "--format", "dot"]) == 0
    out = capsys.readouterr().out
    node_lines = [l for l in out.splitlines() if l.endswith(";") and "--" not in l]
    assert len(node_lines) == 14


def test_build_usage_error():
    with pytest.raises(SystemExit) as exc:
        run_main(["build", "--kind", "prime", "--n", "1"])
    assert exc.value.code == 2


def test_unknown_check_usage_error():
    with pytest.raises(SystemExit) as exc:
        run_main(["verify", "--checks", "nonsense"])
    assert exc.value.code == 2


def test_table_contents(tmp_path):
    out = tmp_path / "t.csv"
    assert run_main(["table", "--n-max", "30", "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert len(lines) == 30  # header + n in [2, 30]
    header = lines[0].split(",")
    assert header[:3] == ["n", "mertens", "chi"]
    row10 = dict(zip(header, lines[9].split(",")))
    assert row10["n"] == "10" and row10["chi"] == "2" and row10["mertens"] == "-1"
    assert row10["b0"] == "2" and row10["c0"] == "4" and row10["c1"] == "2"
    assert row10["weak"] == "true" and row10["strong"] == "true"


def test_table_determinism_and_cache(tmp_path):
    a, b, c, d = (tmp_path / name for name in ("a.csv", "b.csv", "c.csv", "d.csv"))
    cache = tmp_path / "cache.jsonl"
    assert run_main(["table", "--n-max", "40", "--out", str(a)]) == 0
    assert run_main(["table", "--n-max", "40", "--threads", "3", "--out", str(b)]) == 0
    assert run_main(["table", "--n-max", "40", "--cache", str(cache), "--out", str(c)]) == 0
    assert run_main(["table", "--n-max", "40", "--cache", str(cache), "--out", str(d)]) == 0
    assert a.read_bytes() == b.read_bytes() == c.read_bytes() == d.read_bytes()
    assert cache.exists() and len(cache.read_text().splitlines()) == 39


def test_table_cache_partial_reuse(tmp_path):
    cache = tmp_path / "cache.jsonl"
    out1, out2 = tmp_path / "o1.csv", tmp_path / "o2.csv"
    assert run_main(["table", "--n-max", "20", "--cache", str(cache), "--out", str(out1)]) == 0
    assert run_main(["table", "--n-max", "40", "--cache", str(cache), "--out", str(out2)]) == 0
    # extended run appends only the missing rows
    assert len(cache.read_text().splitlines()) == 39


def test_table_corrupt_cache_truncated(tmp_path, capsys):
    cache = tmp_path / "cache.jsonl"
    out = tmp_path / "o.csv"
    assert run_main(["table", "--n-max", "10", "--cache", str(cache), "--out", str(out)]) == 0
    with open(cache, "a") as fh:
        fh.write('{"kind": "prime", "n": 11, CORRUPT\n')
    out2 = tmp_path / "o2.csv"
    assert run_main(["table", "--n-max", "10", "--cache", str(cache), "--out", str(out2)]) == 0
    assert "truncating corrupt cache" in capsys.readouterr().err
    assert out.read_bytes() == out2.read_bytes()
    # corrupt tail removed from the file
    assert all(json.loads(line) for line in cache.read_text().splitlines())


def test_verify_pass_and_exit_codes(capsys):
    assert run_main(["verify", "--checks", "mertens,hopf", "--n-max", "120"]) == 0
    out = capsys.readouterr().out
    assert out.count("pass") == 2


def test_verify_kummer(capsys):
    assert run_main(["verify", "--checks", "kummer", "--d", "3", "--n-max", "30"]) == 0
    assert "Divisor(30)" in capsys.readouterr().out


def test_verify_failure_exit(monkeypatch, capsys):
    monkeypatch.setitem(cli.CHECK_FUNCS, "mertens", lambda cfg, sieve, G: (False, "first counterexample n=5"))
    assert run_main(["verify", "--checks", "mertens", "--n-max", "10"]) == 1
    assert "FAIL" in capsys.readouterr().out


def test_series_dimension(tmp_path, capsys):
    out = tmp_path / "dim.csv"
    assert run_main(["series", "--what", "dimension", "--n-max", "30", "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "n,dim_exact,dim_float"
    first = lines[1].split(",")
    assert first[0] == "6" and first[1] == "3/4"
    assert "fit dim(n)" in capsys.readouterr().err


def test_series_wu(tmp_path):
    out = tmp_path / "wu.csv"
    assert run_main(["series", "--what", "wu", "--n-max", "30", "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "n,wu,chi_scaled"
    for line in lines[1:]:
        _, wu, _ = line.split(",")
        int(wu)  # integers throughout
    assert lines[1] == "2,1,85"
