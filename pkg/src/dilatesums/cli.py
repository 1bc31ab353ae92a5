"""Command-line front door: set generation, corpus verification runs,
partition traces, and extremal-exponent search.

Exit codes: 0 all asserted checks passed, 1 usage or I/O error, 2 at least
one asserted check failed (the failing report ids go to stderr).  Outputs
are byte-deterministic for fixed inputs, seed, and configuration.
"""

from __future__ import annotations

import argparse
import json
import math
import random
import sys
from fractions import Fraction
from pathlib import Path

from . import bounds
from .bounds import CorpusItem
from .reports import (BoundReport, BoundViolation, Constants, DEFAULT_CONSTANTS,
                      VERSION, reports_to_csv, reports_to_json)
from .sets import (GroupSet, dilate_sum_size, doubling, dump_set, format_set,
                   load_set)
from .structure import theorem1_partition

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VIOLATION = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        raise SystemExit(EXIT_USAGE)


# ---------------------------------------------------------------------------
# corpus and generator specs


def _gen_from_args(family: str, args) -> GroupSet:
    if family == "interval":
        return bounds.gen_interval(args.n)
    if family == "geometric":
        return bounds.gen_geometric(args.ratio, args.n)
    if family == "hypercube":
        return bounds.gen_hypercube(args.n, embed=not args.raw)
    if family == "simplex":
        return bounds.gen_simplex(args.d, args.T)
    if family == "gap":
        steps = [int(s) for s in args.steps.split(",")]
        sizes = [int(s) for s in args.sizes.split(",")]
        return bounds.gen_gap(steps, sizes)
    if family == "random":
        return bounds.gen_random(args.n, args.universe, args.seed)
    raise ValueError(f"unknown family {family!r}")


def parse_corpus_token(token: str) -> list[CorpusItem]:
    """One corpus spec token -> corpus items.

    Tokens: default[:RANDCOUNT], structured, random:COUNT,
    interval:N, geometric:RATIO:N, hypercube:N[:raw], simplex:D:T,
    gap:S1,S2,..:N1,N2,.., randset:N:UNIVERSE:SEED, file:PATH.
    """
    parts = token.split(":")
    kind = parts[0]
    if kind == "default":
        count = int(parts[1]) if len(parts) > 1 else 1000
        return bounds.default_corpus(count)
    if kind == "structured":
        return bounds.structured_corpus()
    if kind == "random":
        return bounds.random_corpus(int(parts[1]) if len(parts) > 1 else 1000)
    if kind == "interval":
        n = int(parts[1])
        return [CorpusItem("interval", f"n={n}", bounds.gen_interval(n))]
    if kind == "geometric":
        r, n = int(parts[1]), int(parts[2])
        return [CorpusItem("geometric", f"ratio={r};n={n}", bounds.gen_geometric(r, n))]
    if kind == "hypercube":
        n = int(parts[1])
        raw = len(parts) > 2 and parts[2] == "raw"
        return [CorpusItem("hypercube", f"n={n};embed={0 if raw else 1}",
                           bounds.gen_hypercube(n, embed=not raw))]
    if kind == "simplex":
        d, T = int(parts[1]), int(parts[2])
        return [CorpusItem("simplex", f"d={d};T={T}", bounds.gen_simplex(d, T))]
    if kind == "gap":
        steps = [int(s) for s in parts[1].split(",")]
        sizes = [int(s) for s in parts[2].split(",")]
        return [CorpusItem("gap", f"steps={parts[1]};sizes={parts[2]}",
                           bounds.gen_gap(steps, sizes))]
    if kind == "randset":
        n, u, seed = int(parts[1]), int(parts[2]), int(parts[3])
        return [CorpusItem("random", f"n={n};u={u};seed={seed}",
                           bounds.gen_random(n, u, seed))]
    if kind == "file":
        path = token.split(":", 1)[1]
        return [CorpusItem("file", path, load_set(path))]
    raise ValueError(f"unknown corpus token {token!r}")


def build_corpus(spec: str) -> list[CorpusItem]:
    items = []
    for token in spec.split(","):
        token = token.strip()
        if token:
            items.extend(parse_corpus_token(token))
    if not items:
        raise ValueError("empty corpus specification")
    return items


# ---------------------------------------------------------------------------
# verify


def _run_ineq_on_item(token: str, item: CorpusItem, exact_limit: int) -> list[BoundReport]:
    parts = token.split(":")
    kind = parts[0]
    meta = {"family": item.family, "params": item.params}
    if kind == "thm1":
        return [bounds.verify_thm1(item.A, **meta)]
    if kind == "thm2":
        return [bounds.verify_thm2(item.A, **meta)]
    if kind == "large-dilates":
        lam = int(parts[1]) if len(parts) > 1 else 2
        return [bounds.verify_large_dilates(item.A, lam, **meta)]
    if kind == "largeK":
        lam = int(parts[1]) if len(parts) > 1 else 2
        return [bounds.verify_largeK(item.A, lam, **meta)]
    if kind == "dilate-lemma":
        part = int(parts[1])
        if part in (1, 2):
            l1, l2 = int(parts[2]), int(parts[3])
            return [bounds.verify_dilate_lemma(item.A, part, l1, l2,
                                               exact_limit=exact_limit, **meta)]
        lam, j = int(parts[2]), int(parts[3])
        return [bounds.verify_dilate_lemma(item.A, 3, lam, j=j,
                                           exact_limit=exact_limit, **meta)]
    if kind == "ruzsa":
        out = []
        for sign in (+1, -1):
            out.append(bounds.ruzsa_triangle_check(item.A, item.A, item.A,
                                                   sign=sign, **meta))
        return out
    raise ValueError(f"unknown inequality token {token!r}")


_CORPUS_FREE = ("fp-equality", "fp-lower")


def _run_corpus_free(token: str) -> list[BoundReport]:
    parts = token.split(":")
    kind = parts[0]
    dmax = int(parts[1]) if len(parts) > 1 else 3
    tmax = int(parts[2]) if len(parts) > 2 else 5
    out = []
    for d in range(1, dmax + 1):
        for T in range(1, tmax + 1):
            meta = {"family": "simplex", "params": f"d={d};T={T}"}
            if kind == "fp-equality":
                out.append(bounds.fp_equality_check(d, T, **meta))
            else:
                out.append(bounds.fp_lower_bound_check(d, T, **meta))
    return out


def cmd_verify(args) -> int:
    constants = _load_constants(args)
    corpus = build_corpus(args.corpus)
    tokens = [t.strip() for t in args.ineq.split(",") if t.strip()]
    reports: list[BoundReport] = []
    failures: list[str] = []
    for token in tokens:
        if token.split(":")[0] in _CORPUS_FREE:
            try:
                reports.extend(_run_corpus_free(token))
            except BoundViolation as exc:
                failures.append(exc.report.id)
                reports.append(exc.report)
            continue
        for item in corpus:
            try:
                reports.extend(_run_ineq_on_item(token, item, args.exact_limit))
            except BoundViolation as exc:
                exc.report.family = item.family
                exc.report.params = item.params
                failures.append(f"{exc.report.id} [{item.family} {item.params}]")
                reports.append(exc.report)
    config = {
        "version": VERSION,
        "command": "verify",
        "corpus": args.corpus,
        "ineq": args.ineq,
        "seed": args.seed,
        "exact_limit": args.exact_limit,
        "constants": constants.to_dict(),
    }
    _emit_reports(reports, config, args)
    for ident in failures:
        print(f"FAILED {ident}", file=sys.stderr)
    n_pass = sum(1 for r in reports if r.passed)
    print(f"{n_pass}/{len(reports)} checks passed over {len(corpus)} corpus sets")
    return EXIT_VIOLATION if failures else EXIT_OK


def _emit_reports(reports, config, args) -> None:
    if not args.out:
        return
    out = Path(args.out)
    if args.format == "csv":
        out.write_text(reports_to_csv(reports), encoding="utf-8")
    else:
        out.write_text(reports_to_json(reports, config), encoding="utf-8")
    if args.figures:
        from . import figures
        figures.render_report_figures(reports, out.with_suffix(""))


# ---------------------------------------------------------------------------
# gen


def cmd_gen(args) -> int:
    A = _gen_from_args(args.family, args)
    if args.out:
        dump_set(A, args.out)
        print(f"wrote {len(A)} points (dim {A.dim}) to {args.out}")
    else:
        sys.stdout.write(format_set(A))
    return EXIT_OK


# ---------------------------------------------------------------------------
# partition


def cmd_partition(args) -> int:
    constants = _load_constants(args)
    spec = args.set
    if Path(spec).exists():
        A = load_set(spec)
        provenance = spec
    else:
        items = parse_corpus_token(spec)
        if len(items) != 1:
            raise ValueError("partition needs a single-set spec")
        A = items[0].A
        provenance = f"{items[0].family} {items[0].params}"
    M = None if args.M == "auto" else Fraction(args.M)
    trace = theorem1_partition(A, M=M, constants=constants,
                               exact_limit=args.exact_limit, rng=args.seed)
    config = {
        "version": VERSION,
        "command": "partition",
        "set": provenance,
        "M": args.M,
        "seed": args.seed,
        "exact_limit": args.exact_limit,
        "constants": constants.to_dict(),
    }
    doc = {"version": VERSION, "config": config, "trace": trace.to_dict()}
    if args.out:
        Path(args.out).write_text(json.dumps(doc, indent=2, default=str) + "\n",
                                  encoding="utf-8")
        if args.figures:
            from . import figures
            figures.render_partition_blocks(trace, Path(args.out).with_suffix(""))
    if args.trace_dir:
        tdir = Path(args.trace_dir)
        tdir.mkdir(parents=True, exist_ok=True)
        for i, rec in enumerate(trace.blocks):
            dump_set(rec.block, tdir / f"block_{i:03d}.set")
    print(f"partitioned |A|={trace.size} into {len(trace.blocks)} blocks "
          f"(a={trace.branch_counts['a']}, b={trace.branch_counts['b']}); "
          f"union bound {trace.total_actual} >= {trace.dilate_sum}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# search


def _search_objective(values: list[int], lam: int) -> float | None:
    A = GroupSet.of_ints(values)
    stats = doubling(A)
    if stats.K == 1:
        return None
    lhs = dilate_sum_size(A, lam, A)
    return ((math.log(lhs) - math.log(stats.size))
            / (math.log(stats.sumset_size) - math.log(stats.size)))


def run_search(lam: int, n: int, universe: int, budget: int, seed: int,
               t0: float = 0.05, cool: float = 0.995):
    """Simulated annealing over size-n subsets of [0, universe), maximizing
    the empirical exponent.  Moves swap one element; candidates with K = 1
    are skipped.  Deterministic for a fixed seed."""
    if n < 2:
        raise ValueError("search needs n >= 2 (the exponent is undefined below)")
    if universe < n:
        raise ValueError("universe must be at least n")
    rng = random.Random(seed)
    current = sorted(rng.sample(range(universe), n))
    cur_obj = _search_objective(current, lam)
    best, best_obj = list(current), cur_obj
    history = [(0, best_obj)]
    temp = t0
    in_set = set(current)
    if universe == n:
        budget = 0      # the full set is the only state; no move exists
    for it in range(1, budget + 1):
        temp *= cool
        out_elem = current[rng.randrange(n)]
        while True:
            new_elem = rng.randrange(universe)
            if new_elem not in in_set:
                break
        cand = sorted(v for v in current if v != out_elem) + [new_elem]
        cand.sort()
        obj = _search_objective(cand, lam)
        if obj is None:
            continue
        accept = obj >= cur_obj or rng.random() < math.exp((obj - cur_obj) / max(temp, 1e-12))
        if accept:
            current, cur_obj = cand, obj
            in_set = set(current)
            if obj > best_obj:
                best, best_obj = list(cand), obj
                history.append((it, best_obj))
    return best, best_obj, history


def cmd_search(args) -> int:
    best, best_obj, history = run_search(args.lam, args.n, args.universe,
                                         args.budget, args.seed,
                                         t0=args.t0, cool=args.cool)
    bracket = bounds.exponent_bracket(args.lam)
    A = GroupSet.of_ints(best)
    stats = doubling(A)
    config = {
        "version": VERSION,
        "command": "search",
        "lam": args.lam,
        "n": args.n,
        "universe": args.universe,
        "budget": args.budget,
        "seed": args.seed,
        "t0": args.t0,
        "cool": args.cool,
    }
    doc = {
        "version": VERSION,
        "config": config,
        "best": {
            "points": best,
            "exponent": best_obj,
            "K": str(stats.K),
            "size": args.n,
            "lhs": dilate_sum_size(A, args.lam, A),
        },
        "bracket": list(bracket),
        "history": [[it, obj] for it, obj in history],
    }
    text = json.dumps(doc, indent=2, default=str) + "\n"
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        if args.figures:
            from . import figures
            figures.render_search_history(history, bracket, Path(args.out).with_suffix(""))
    print(f"best exponent {best_obj:.6f} on {best} "
          f"(bracket [{bracket[0]:.4f}, {bracket[1]:.4f}])")
    return EXIT_OK


# ---------------------------------------------------------------------------
# plumbing


def _load_constants(args) -> Constants:
    data = {}
    if getattr(args, "constants", None):
        data = json.loads(Path(args.constants).read_text(encoding="utf-8"))
    constants = Constants.from_dict(data) if data else DEFAULT_CONSTANTS
    if getattr(args, "strict", False):
        constants = Constants.from_dict({**constants.to_dict(), "strict": True})
    return constants


def _add_common(p) -> None:
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--constants", help="JSON file of named constants")
    p.add_argument("--strict", action="store_true",
                   help="turn constant-bearing reported checks into assertions")
    p.add_argument("--exact-limit", type=int, default=16, dest="exact_limit")
    p.add_argument("--out", help="output report path")
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--no-figures", dest="figures", action="store_false",
                   help="skip rendering figures next to the report")
    p.set_defaults(figures=True)


def make_parser() -> _Parser:
    parser = _Parser(prog="dilatesums",
                     description="exact dilate-sum arithmetic and verified "
                                 "small-doubling inequalities")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a set file")
    g.add_argument("family", choices=["interval", "geometric", "hypercube",
                                      "simplex", "gap", "random"])
    g.add_argument("--n", type=int, default=8)
    g.add_argument("--ratio", type=int, default=3)
    g.add_argument("--raw", action="store_true", help="hypercube: keep Z^n form")
    g.add_argument("--d", type=int, default=2)
    g.add_argument("--T", type=int, default=3)
    g.add_argument("--steps", default="1,9")
    g.add_argument("--sizes", default="5,5")
    g.add_argument("--universe", type=int, default=64)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", help="set file to write (stdout otherwise)")
    g.set_defaults(func=cmd_gen)

    v = sub.add_parser("verify", help="run inequality verifiers over a corpus")
    v.add_argument("--corpus", default="default")
    v.add_argument("--ineq", default="thm1,largeK")
    _add_common(v)
    v.set_defaults(func=cmd_verify)

    p = sub.add_parser("partition", help="run the partition engine on a set")
    p.add_argument("set", help="set file path or single-set corpus token")
    p.add_argument("--M", default="auto",
                   help="saving parameter (rational) or 'auto' for K^(1/20)")
    p.add_argument("--trace", dest="trace_dir",
                   help="directory for per-block set files")
    _add_common(p)
    p.set_defaults(func=cmd_partition)

    s = sub.add_parser("search", help="anneal for sets with a large empirical exponent")
    s.add_argument("--lam", type=int, default=2)
    s.add_argument("--n", type=int, default=4)
    s.add_argument("--universe", type=int, default=64)
    s.add_argument("--budget", type=int, default=10000)
    s.add_argument("--t0", type=float, default=0.05)
    s.add_argument("--cool", type=float, default=0.995)
    _add_common(s)
    s.set_defaults(func=cmd_search)
    return parser


def main(argv=None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else EXIT_USAGE
    try:
        return args.func(args)
    except BoundViolation as exc:
        print(f"FAILED {exc.report.id}", file=sys.stderr)
        return EXIT_VIOLATION
    except (OSError, ValueError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
