"""Command-line contract: generation, verification runs, partition traces,
search, exit codes, and byte-level determinism."""

import json
import math

import pytest

from dilatesums import cli
from dilatesums.reports import BoundViolation, make_exact_report
from dilatesums.sets import load_set


def run(*argv):
    return cli.main(list(argv))


# ---------------------------------------------------------------------------
# gen


def test_gen_interval(tmp_path):
    out = tmp_path / "a.set"
    assert run("gen", "interval", "--n", "8", "--out", str(out)) == 0
    A = load_set(out)
    assert len(A) == 8 and A.dim == 1


def test_gen_simplex(tmp_path):
    out = tmp_path / "s.set"
    assert run("gen", "simplex", "--d", "2", "--T", "3", "--out", str(out)) == 0
    assert len(load_set(out)) == 10


def test_gen_hypercube_embedded(tmp_path):
    out = tmp_path / "h.set"
    assert run("gen", "hypercube", "--n", "4", "--out", str(out)) == 0
    A = load_set(out)
    assert A.dim == 1 and len(A) == 16


def test_gen_usage_error():
    assert run("gen", "nosuchfamily") == 1


# ---------------------------------------------------------------------------
# verify


def test_verify_small_corpus_json(tmp_path):
    out = tmp_path / "rep.json"
    code = run("verify", "--corpus", "interval:12,geometric:3:6,simplex:2:3",
               "--ineq", "thm1,thm2,largeK", "--out", str(out), "--no-figures")
    assert code == 0
    doc = json.loads(out.read_text())
    assert doc["version"] == "0.1.0"
    assert doc["config"]["ineq"] == "thm1,thm2,largeK"
    assert len(doc["reports"]) == 9
    assert all(r["pass"] for r in doc["reports"])


def test_verify_csv_format(tmp_path):
    out = tmp_path / "rep.csv"
    code = run("verify", "--corpus", "interval:8", "--ineq", "thm1",
               "--format", "csv", "--out", str(out), "--no-figures")
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "id,family,params,size,K,lhs,rhs,ratio,pass"
    assert lines[1].startswith("thm1,interval,n=8,8,15/8,22,")


def test_verify_fp_tokens(tmp_path):
    out = tmp_path / "fp.json"
    code = run("verify", "--corpus", "interval:4", "--ineq",
               "fp-equality:2:3,fp-lower:1:3", "--out", str(out), "--no-figures")
    assert code == 0
    doc = json.loads(out.read_text())
    ids = {r["id"] for r in doc["reports"]}
    assert ids == {"fp-equality", "fp-lower"}


def test_verify_renders_figures(tmp_path):
    out = tmp_path / "rep.json"
    code = run("verify", "--corpus", "interval:8,interval:16", "--ineq", "thm1",
               "--out", str(out))
    assert code == 0
    pngs = sorted(p.name for p in tmp_path.glob("*.png"))
    assert pngs == ["rep_exponents.png", "rep_saturation.png"]


def test_verify_exit_two_on_violation(tmp_path, monkeypatch):
    def broken(A, **meta):
        raise BoundViolation(make_exact_report("thm1", 5, 1, **meta))
    monkeypatch.setattr(cli.bounds, "verify_thm1", broken)
    out = tmp_path / "rep.json"
    code = run("verify", "--corpus", "interval:4", "--ineq", "thm1",
               "--out", str(out), "--no-figures")
    assert code == 2
    doc = json.loads(out.read_text())
    assert not doc["reports"][0]["pass"]


def test_verify_usage_error_exit_one():
    assert run("verify", "--corpus", "nosuchtoken:3", "--no-figures") == 1


def test_verify_determinism(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    args = ["verify", "--corpus", "interval:12,randset:10:40:3", "--ineq",
            "thm1,largeK", "--seed", "5", "--no-figures"]
    assert run(*args, "--out", str(a)) == 0
    assert run(*args, "--out", str(b)) == 0
    assert a.read_bytes() == b.read_bytes()


# ---------------------------------------------------------------------------
# partition


def test_partition_token(tmp_path):
    out = tmp_path / "trace.json"
    code = run("partition", "interval:64", "--out", str(out), "--no-figures")
    assert code == 0
    doc = json.loads(out.read_text())
    trace = doc["trace"]
    assert trace["size"] == 64
    assert trace["total_actual"] >= trace["dilate_sum"]
    assert sum(b["size"] for b in trace["blocks"]) == 64


def test_partition_set_file_with_trace_dir(tmp_path):
    src = tmp_path / "in.set"
    run("gen", "gap", "--steps", "1,1000", "--sizes", "8,2", "--out", str(src))
    out = tmp_path / "trace.json"
    tdir = tmp_path / "blocks"
    code = run("partition", str(src), "--out", str(out), "--trace", str(tdir),
               "--no-figures")
    assert code == 0
    doc = json.loads(out.read_text())
    blocks = sorted(tdir.glob("block_*.set"))
    assert len(blocks) == len(doc["trace"]["blocks"])
    total = sum(len(load_set(p)) for p in blocks)
    assert total == 16


def test_partition_explicit_M(tmp_path):
    out = tmp_path / "t.json"
    code = run("partition", "randset:20:80:3", "--M", "2", "--out", str(out),
               "--no-figures")
    assert code == 0
    assert json.loads(out.read_text())["trace"]["M"] == "2"


def test_partition_figures(tmp_path):
    out = tmp_path / "t.json"
    assert run("partition", "interval:32", "--out", str(out)) == 0
    assert (tmp_path / "t_blocks.png").exists()


# ---------------------------------------------------------------------------
# search


def test_search_budget_zero_returns_seeded(tmp_path):
    out = tmp_path / "s.json"
    code = run("search", "--lam", "2", "--n", "4", "--universe", "64",
               "--budget", "0", "--seed", "3", "--out", str(out), "--no-figures")
    assert code == 0
    doc = json.loads(out.read_text())
    import random
    expect = sorted(random.Random(3).sample(range(64), 4))
    assert doc["best"]["points"] == expect


def test_search_two_point_sets_constant_exponent(tmp_path):
    out = tmp_path / "s.json"
    code = run("search", "--lam", "2", "--n", "2", "--universe", "32",
               "--budget", "50", "--out", str(out), "--no-figures")
    assert code == 0
    doc = json.loads(out.read_text())
    assert doc["best"]["exponent"] == pytest.approx(math.log(2) / math.log(1.5))


def test_search_reaches_cube_witness(tmp_path):
    out = tmp_path / "s.json"
    code = run("search", "--lam", "2", "--n", "4", "--universe", "64",
               "--budget", "10000", "--seed", "0", "--out", str(out),
               "--no-figures")
    assert code == 0
    doc = json.loads(out.read_text())
    assert doc["best"]["exponent"] >= math.log(2) / math.log(1.5) - 1e-9
    lo, hi = doc["bracket"]
    assert lo == pytest.approx(math.log(2) / math.log(1.5))
    assert hi == pytest.approx(2.95)


def test_search_determinism_and_figure(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    args = ["search", "--lam", "2", "--n", "5", "--universe", "48",
            "--budget", "400", "--seed", "11"]
    assert run(*args, "--out", str(a)) == 0
    assert run(*args, "--out", str(b), "--no-figures") == 0
    assert a.read_bytes() == b.read_bytes()
    assert (tmp_path / "a_history.png").exists()


def test_search_rejects_tiny_n():
    assert run("search", "--n", "1", "--universe", "8", "--budget", "1") == 1
