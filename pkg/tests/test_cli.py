import csv
import io
import json
import os
import re
import subprocess
import sys

import pytest

from hessgraph import cli
from hessgraph.graphs.verify import StructureReport

EDGE = re.compile(r'^  "([^"]*)" -> "([^"]*)";$')
NODE = re.compile(r'^  "([^"]*)"( \[style=filled, fillcolor="[a-z]+"\])?;$')


def run(args, capsys):
    code = cli.main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


def parse_dot(text):
    nodes, edges, marked = [], [], set()
    for line in text.splitlines()[1:-1]:
        m = EDGE.match(line)
        if m:
            edges.append(m.groups())
            continue
        m = NODE.match(line)
        assert m, line
        nodes.append(m.group(1))
        if m.group(2):
            marked.add(m.group(1))
    return nodes, edges, marked


def oracle_hess_edges(p):
    def img(j):
        if j == 0:
            return "inf"
        return str((6912 - j) ** 3 * pow(27 * j * j, -1, p) % p)
    return {(str(j), img(j)) for j in range(p)} | {("inf", "inf")}


def test_graph_dot_matches_oracle(capsys):
    code, out, _ = run(["graph", "--p", "17", "--map", "hess", "--format", "dot"], capsys)
    assert code == 0
    assert out.startswith("digraph ") and out.endswith("}\n")
    nodes, edges, _ = parse_dot(out)
    assert len(nodes) == 18 and len(edges) == 18
    assert set(edges) == oracle_hess_edges(17)
    assert ("inf", "inf") in edges  # self-loop rendered


def test_graph_output_is_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.dot", tmp_path / "b.dot"
    for path in (a, b):
        assert cli.main(["graph", "--p", "31", "--map", "hess", "--highlight", "cubes", "--out", str(path)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert b"\r" not in a.read_bytes()
    assert [f.name for f in tmp_path.iterdir() if f.name.startswith(".")] == []


def test_rational_highlight(capsys):
    p = 29
    code, out, _ = run(["graph", "--p", str(p), "--map", "psi-s", "--highlight", "rational"], capsys)
    assert code == 0
    nodes, edges, marked = parse_dot(out)
    assert len(nodes) == p + 1
    # x-coordinates of F_p-points of y^2 = x^3 - 1728, plus the point at infinity
    squares = {y * y % p for y in range(p)}
    want = {str(x) for x in range(p) if (x ** 3 - 1728) % p in squares} | {"inf"}
    assert marked == want


def test_cube_highlight(capsys):
    p = 31
    code, out, _ = run(["graph", "--p", str(p), "--map", "hess", "--highlight", "cubes"], capsys)
    assert code == 0
    _, _, marked = parse_dot(out)
    assert marked == {str(x ** 3 % p) for x in range(p)} | {"inf"}


def test_graph_json(capsys):
    code, out, _ = run(["graph", "--p", "29", "--map", "hess", "--format", "json"], capsys)
    doc = json.loads(out)
    assert code == 0 and doc["schema"] == 1
    assert doc["periodic_count"] == sum(doc["cycle_lengths"]) == 10
    assert doc["n_vertices"] == len(doc["edges"]) == 30


def test_graph_csv_and_other_maps(capsys):
    for m in ("f", "psi-proj", "lambda", "psi-curve"):
        code, out, _ = run(["graph", "--p", "7", "--map", m, "--format", "csv"], capsys)
        assert code == 0
        rows = list(csv.reader(io.StringIO(out)))
        assert rows[0] == ["source", "target"]
    code, out, _ = run(["graph", "--p", "5", "--map", "hess", "--field", "ext", "--format", "csv"], capsys)
    assert code == 0 and len(out.splitlines()) == 1 + 26


def test_stats_rows(capsys):
    code, out, _ = run(["stats", "--map", "f", "--k", "-6912", "--l", "-27", "--p-range", "5..100"], capsys)
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [int(r["q"]) for r in rows][:4] == [5, 7, 11, 13] and len(rows) == 23
    for r in rows:
        assert int(r["n_vertices"]) == int(r["q"]) + 1
        assert int(r["periodic_count"]) == sum(map(int, r["cycle_length_multiset"].split()))


def test_stats_distinguishes_l(capsys):
    _, a, _ = run(["stats", "--map", "f", "--k", "-6912", "--l", "-27", "--p", "17"], capsys)
    _, b, _ = run(["stats", "--map", "f", "--k", "-6912", "--l", "-8", "--p", "17"], capsys)
    ra, rb = (next(csv.DictReader(io.StringIO(t))) for t in (a, b))
    # same cycles at p = 17; the trees differ
    assert ra["cycle_length_multiset"] == rb["cycle_length_multiset"] == "1 1"
    assert (ra["max_tree_depth"], rb["max_tree_depth"]) == ("4", "7")


def test_stats_empty_range(capsys):
    code, out, _ = run(["stats", "--p-range", "24..28"], capsys)
    assert code == 0 and out == ",".join(cli.STATS_FIELDS) + "\n"


@pytest.mark.parametrize("args", [
    ["graph", "--p", "15"],
    ["graph", "--p", "3"],
    ["graph", "--p", "7", "--map", "f", "--k", "14"],
    ["graph", "--p", "7", "--map", "psi-s", "--highlight", "cubes"],
    ["graph", "--p", "7", "--map", "hess", "--highlight", "rational"],
    ["verify", "--theorems", "nope", "--p-range", "5..7"],
    ["verify", "--p-range", "5-7"],
    ["verify", "--p-range", "5..7", "--jobs", "0"],
    ["stats"],
    ["bogus"],
])
def test_bad_config_exit_2(args, capsys):
    code, _, err = run(args, capsys)
    assert code == 2 and err


def test_io_failure_exit_3(tmp_path, capsys):
    target = tmp_path / "missing" / "g.dot"
    code, _, _ = run(["graph", "--p", "7", "--out", str(target)], capsys)
    assert code == 3 and not target.exists()


def test_failed_write_leaves_no_partial_file(tmp_path, monkeypatch):
    target = tmp_path / "out.json"
    target.write_text("old")

    def boom(*a, **k):
        raise OSError("disk full")

    monkeypatch.setattr(cli.os, "replace", boom)
    with pytest.raises(OSError):
        cli.write_output("new", str(target))
    assert target.read_text() == "old"
    assert [f.name for f in tmp_path.iterdir()] == ["out.json"]


def test_verify_passes_and_reports(tmp_path, capsys):
    out = tmp_path / "v.json"
    code = cli.main(["verify", "--theorems", "q2-structure,loops,fibers", "--p-range", "5..60",
                     "--jobs", "1", "--out", str(out)])
    doc = json.loads(out.read_text())
    assert code == 0 and doc["ok"] and doc["schema"] == 1
    ps = [r["p"] for r in doc["results"]]
    assert ps == sorted(ps)
    assert doc["summary"]["loops"] == {"passed": 15, "failed": 0}


def test_verify_parallel_matches_serial(tmp_path):
    outs = []
    for jobs in ("1", "2"):
        path = tmp_path / f"v{jobs}.json"
        assert cli.main(["verify", "--theorems", "projection,conjugacy", "--p-range", "5..40",
                         "--jobs", jobs, "--out", str(path)]) == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]


def test_verify_violation_exit_1(monkeypatch, capsys):
    def broken(p):
        rep = StructureReport("broken", p)
        rep.check("always_false", False, {"p": p})
        return rep

    monkeypatch.setitem(cli.SUITES, "loops", (broken, lambda p: True))
    code, out, _ = run(["verify", "--theorems", "loops", "--p", "7", "--jobs", "1"], capsys)
    doc = json.loads(out)
    assert code == 1 and not doc["ok"]
    assert doc["results"][0]["witnesses"]["always_false"] == [{"p": 7}]


def test_empty_verify_range(capsys):
    code, out, _ = run(["verify", "--p-range", "24..28", "--jobs", "1"], capsys)
    assert code == 0 and json.loads(out)["results"] == []


def test_worker_count(monkeypatch):
    monkeypatch.setenv("HESSGRAPH_THREADS", "3")
    assert cli.worker_count(None) == 3
    assert cli.worker_count(2) == 2
    monkeypatch.delenv("HESSGRAPH_THREADS")
    assert cli.worker_count(None) == (os.cpu_count() or 1)
    monkeypatch.setenv("HESSGRAPH_THREADS", "many")
    with pytest.raises(cli.ConfigError):
        cli.worker_count(None)


def test_parse_range_filters_small_primes():
    assert cli.parse_range("1..13") == [5, 7, 11, 13]
    assert cli.parse_range("20..22") == []


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "hessgraph", "graph", "--p", "5"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0 and res.stdout.count("->") == 6
