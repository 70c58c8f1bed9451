import json

import pytest

from chromdist import graph as G
from chromdist.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("graph,param,value", [
    ("complete:4", "chi-prime-d", 5),
    ("cycle:6", "chi-prime-d", 4),
    ("substar:8", "chi-d", 3),
    ("petersen", "chi-prime", 4),
    ("kst:4,4", "d", 5),
])
def test_compute(capsys, graph, param, value):
    code, out, _ = run(capsys, "compute", "--graph", graph, "--param", param)
    assert code == 0 and f"{param} = {value}" in out


def test_compute_writes_certificate(capsys, tmp_path):
    out = tmp_path / "r.json"
    code, text, _ = run(capsys, "compute", "--graph", "cycle:8", "--param", "chi-prime-d",
                        "--out", str(out))
    assert code == 0 and str(out) in text
    data = json.loads(out.read_text())
    assert data["value"] == 3 and data["certificate"]["distinguishing"]
    gfile = tmp_path / "c8.txt"
    gfile.write_text(G.cycle(8).to_edge_list())
    assert run(capsys, "verify", "--graph", str(gfile), "--certificate", str(out))[0] == 0


def test_compute_bounds_exit_code(capsys):
    code, out, _ = run(capsys, "compute", "--graph", "complete:9", "--param", "chi-prime-d",
                       "--budget-secs", "0.05")
    assert code == 2 and "bounds" in out


def test_compute_errors(capsys, tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("p 3 2\ne 0 1\ne 1 x\n")
    code, _, err = run(capsys, "compute", "--graph", str(bad), "--param", "chi")
    assert code == 1 and "line 3" in err
    two = tmp_path / "two.txt"
    two.write_text(G.disjoint_union(G.path(3), G.path(3)).to_edge_list())
    code, _, err = run(capsys, "compute", "--graph", str(two), "--param", "d-prime")
    assert code == 1 and "disconnected" in err


@pytest.mark.parametrize("graph,name,k", [
    ("kst:5,3", "bipartite-circulant", 5),
    ("complete:6", "one-factorization", 5),
    ("book:3", "book-labeling", 4),
    ("cycle:10", "even-cycle", 3),
    ("path:8", "even-path", 3),
])
def test_construct(capsys, tmp_path, graph, name, k):
    out = tmp_path / "c.json"
    code, text, _ = run(capsys, "construct", "--graph", graph, "--construction", name,
                        "--out", str(out))
    assert code == 0 and f"k={k}" in text
    assert json.loads(out.read_text())["k"] == k


def test_construct_failures(capsys):
    assert run(capsys, "construct", "--graph", "complete:4", "--construction",
               "one-factorization")[0] == 3
    assert run(capsys, "construct", "--graph", "cycle:8", "--construction",
               "bipartite-circulant")[0] == 1


def _files(tmp_path, g, cert):
    gf, cf = tmp_path / "g.txt", tmp_path / "c.json"
    gf.write_text(g.to_edge_list())
    cf.write_text(json.dumps(cert))
    return str(gf), str(cf)


def test_verify_round_trip_and_refutation(capsys, tmp_path):
    from chromdist.constructions import construct_complete_even_labeling, construct_even_cycle_labeling
    c8 = construct_even_cycle_labeling(4).to_json()
    gf, cf = _files(tmp_path, G.cycle(8), c8)
    code, out, _ = run(capsys, "verify", "--graph", gf, "--certificate", cf)
    assert code == 0 and "verified" in out

    ones = dict(c8, labels=[1] * 8, proper=False, distinguishing=True, witness=None)
    gf, cf = _files(tmp_path, G.cycle(8), ones)
    code, out, _ = run(capsys, "verify", "--graph", gf, "--certificate", cf)
    assert code == 3 and "refuted" in out and "witness" in out

    k4 = construct_complete_even_labeling(2, allow_small=True).to_json()
    k4.update(distinguishing=True, witness=None)
    gf, cf = _files(tmp_path, G.complete(4), k4)
    code, out, _ = run(capsys, "verify", "--graph", gf, "--certificate", cf)
    assert code == 3 and "refuted" in out


def test_verify_shape_errors(capsys, tmp_path):
    from chromdist.constructions import construct_even_cycle_labeling
    c8 = construct_even_cycle_labeling(4).to_json()
    short = dict(c8, labels=c8["labels"][:-1])
    short.pop("graph")
    gf, cf = _files(tmp_path, G.cycle(8), short)
    code, _, err = run(capsys, "verify", "--graph", gf, "--certificate", cf)
    assert code == 1 and "7 labels" in err
    wide = dict(c8, labels=[9] + c8["labels"][1:])
    gf, cf = _files(tmp_path, G.cycle(8), wide)
    code, _, err = run(capsys, "verify", "--graph", gf, "--certificate", cf)
    assert code == 1 and "outside" in err
    gf, cf = _files(tmp_path, G.cycle(7), c8)
    assert run(capsys, "verify", "--graph", gf, "--certificate", cf)[0] == 1


def test_table_and_crosscheck_commands(capsys, tmp_path):
    out = tmp_path / "x.json"
    code, text, _ = run(capsys, "crosscheck", "--count", "0", "--out", str(out))
    assert code == 0 and json.loads(out.read_text())["samples"] == []
    code, text, _ = run(capsys, "table", "--budget-secs", "60", "--out", str(out))
    assert code == 0 and "disagree" in text
    assert json.loads(out.read_text())["totals"]["disagree"] == 0
