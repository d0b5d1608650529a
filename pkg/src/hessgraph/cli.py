"""Command-line front end: ``hessgraph graph | verify | stats``.

Exit codes: 0 success, 1 a theorem check failed, 2 bad arguments,
3 output could not be written.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import tempfile
from concurrent.futures import ProcessPoolExecutor
from typing import Optional

from .curves import ModelCurve
from .field import GF, GF2, is_prime
from .graphs.builders import (
    fkl_graph,
    hessian_graph,
    lambda_graph,
    psi_curve_graph,
    psi_proj_graph,
    psi_s_graph,
)
from .graphs.functional import FunctionalGraph, decompose
from .projmaps import HESS_K, HESS_L, ProjPoint, nu, projective_line
from .suites import SUITES, applicable, run_suite

EXIT_OK, EXIT_FAIL, EXIT_CONFIG, EXIT_IO = 0, 1, 2, 3
SCHEMA = 1
MAPS = ("hess", "f", "psi-proj", "lambda", "psi-s", "psi-curve")
STATS_FIELDS = (
    "q", "map", "n_vertices", "n_components", "cycle_length_multiset",
    "max_tree_depth", "n_leaves", "n_self_loops", "periodic_count",
)


class ConfigError(Exception):
    pass


# argument helpers


def parse_range(text: str) -> list:
    """'a..b' (inclusive) -> the primes in that range other than 2 and 3."""
    try:
        lo_s, hi_s = text.split("..")
        lo, hi = int(lo_s), int(hi_s)
    except ValueError:
        raise ConfigError(f"bad range {text!r}; expected a..b")
    return [p for p in range(max(lo, 5), hi + 1) if is_prime(p)]


def _single_prime(p: int) -> int:
    if p in (2, 3) or not is_prime(p):
        raise ConfigError(f"{p} is not a prime other than 2 and 3")
    return p


def _primes(args) -> list:
    if getattr(args, "p_range", None):
        return parse_range(args.p_range)
    if getattr(args, "p", None) is not None:
        return [_single_prime(args.p)]
    raise ConfigError("give --p or --p-range")


def _nonzero_param(value: Optional[int], p: int, name: str, default: int) -> int:
    v = default if value is None else value
    if v % p == 0:
        raise ConfigError(f"{name} = {v} vanishes modulo {p}")
    return v


def worker_count(flag: Optional[int]) -> int:
    if flag is not None:
        if flag < 1:
            raise ConfigError("--jobs must be at least 1")
        return flag
    env = os.environ.get("HESSGRAPH_THREADS")
    if env:
        try:
            n = int(env)
        except ValueError:
            raise ConfigError(f"HESSGRAPH_THREADS={env!r} is not an integer")
        if n < 1:
            raise ConfigError("HESSGRAPH_THREADS must be at least 1")
        return n
    return os.cpu_count() or 1


# graph construction


def build_map_graph(kind: str, p: int, k: Optional[int] = None, l: Optional[int] = None,
                    ext: bool = False):
    """(graph, points-or-None) for one of the supported maps."""
    field = GF2(p) if ext else GF(p)
    if kind == "hess":
        return hessian_graph(field), None
    if kind == "f":
        kk = _nonzero_param(k, p, "k", HESS_K)
        ll = _nonzero_param(l, p, "l", HESS_L)
        return fkl_graph(field, kk, ll), None
    if kind == "psi-proj":
        return psi_proj_graph(field, _nonzero_param(k, p, "k", HESS_K)), None
    if kind == "lambda":
        return lambda_graph(field), None
    if kind in ("psi-s", "psi-curve"):
        if ext:
            raise ConfigError(f"--field ext does not apply to --map {kind}")
        M = ModelCurve(_nonzero_param(k, p, "k", HESS_K), p)
        pg = psi_s_graph(M, quotient=True) if kind == "psi-s" else psi_curve_graph(M)
        return pg.graph, (M, pg)
    raise ConfigError(f"unknown map {kind!r}")


def highlight_set(kind: str, mode: Optional[str], p: int, extra, ext: bool,
                  k_arg: Optional[int] = None) -> set:
    if mode is None:
        return set()
    if mode == "cubes":
        if kind in ("psi-s", "psi-curve"):
            raise ConfigError("cube highlighting applies to maps on P^1")
        field = GF2(p) if ext else GF(p)
        return {nu(pt).index() for pt in projective_line(field)}
    if mode == "rational":
        if extra is not None:
            M, pg = extra
            return {v for v, P in enumerate(pg.points) if M.in_base_curve(P)}
        if kind in ("hess", "psi-proj") and not ext:
            # a P^1 vertex is marked when its lift to the model curve is F_p-rational
            if kind == "hess" and p % 3 != 2:
                raise ConfigError("rational highlighting of the Hessian graph needs p = 2 mod 3")
            k = HESS_K if kind == "hess" else _nonzero_param(k_arg, p, "k", HESS_K)
            M = ModelCurve(k, p)
            out = set()
            for pt in projective_line(GF(p)):
                x = _nu_inverse(pt) if kind == "hess" else pt
                if M.in_base_curve(M.iota(x)):
                    out.add(pt.index())
            return out
        raise ConfigError(f"rational highlighting is not available for --map {kind}")
    raise ConfigError(f"unknown highlight {mode!r}")


def _nu_inverse(pt: ProjPoint) -> ProjPoint:
    if pt.x is None:
        return pt
    p = pt.field.p
    return ProjPoint(pt.field, pt.x ** pow(3, -1, p - 1))


# renderers


def _quote(s: str) -> str:
    return '"' + s.replace('"', '\\"') + '"'


def render_dot(g: FunctionalGraph, highlight: set = frozenset(), color: str = "lightgray") -> str:
    lines = [f"digraph {_quote(g.name or 'G')} {{"]
    for v in range(g.n):
        attrs = f' [style=filled, fillcolor="{color}"]' if v in highlight else ""
        lines.append(f"  {_quote(g.labels[v])}{attrs};")
    for v in range(g.n):
        lines.append(f"  {_quote(g.labels[v])} -> {_quote(g.labels[g.succ[v]])};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_summary(g: FunctionalGraph) -> dict:
    comps = decompose(g)
    return {
        "n_vertices": g.n,
        "n_components": len(comps),
        "cycle_lengths": sorted(c.cycle_length for c in comps),
        "max_tree_depth": max((c.max_depth for c in comps), default=0),
        "n_leaves": sum(1 for d in g.indegrees() if d == 0),
        "n_self_loops": len(g.self_loops()),
        "periodic_count": sum(c.cycle_length for c in comps),
        "components": [
            {
                "cycle": [g.labels[v] for v in c.cycle],
                "size": c.size(),
                "leaf_depths": {str(k): n for k, n in sorted(c.leaf_depths.items())},
                "indegree_histogram": {str(k): n for k, n in sorted(c.indegree_histogram.items())},
            }
            for c in comps
        ],
    }


def render_json(g: FunctionalGraph, q: int, kind: str, highlight: set) -> str:
    doc = {
        "schema": SCHEMA,
        "q": q,
        "map": kind,
        "vertices": g.labels,
        "edges": [[g.labels[v], g.labels[g.succ[v]]] for v in range(g.n)],
        "highlight": [g.labels[v] for v in sorted(highlight)],
    }
    doc.update(graph_summary(g))
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def render_edges_csv(g: FunctionalGraph) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["source", "target"])
    for v in range(g.n):
        w.writerow([g.labels[v], g.labels[g.succ[v]]])
    return buf.getvalue()


def stats_record(g: FunctionalGraph, q: int, kind: str) -> dict:
    s = graph_summary(g)
    return {
        "q": q,
        "map": kind,
        "n_vertices": s["n_vertices"],
        "n_components": s["n_components"],
        "cycle_length_multiset": " ".join(map(str, s["cycle_lengths"])),
        "max_tree_depth": s["max_tree_depth"],
        "n_leaves": s["n_leaves"],
        "n_self_loops": s["n_self_loops"],
        "periodic_count": s["periodic_count"],
    }


def render_stats_csv(rows: list) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=STATS_FIELDS, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow(r)
    return buf.getvalue()


# output


def write_output(text: str, path: Optional[str]) -> None:
    """Write to stdout, or atomically to ``path`` via a temp file and rename."""
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".hessgraph-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# commands


def cmd_graph(args) -> int:
    p = _single_prime(args.p)
    ext = args.field == "ext"
    g, extra = build_map_graph(args.map, p, args.k, args.l, ext)
    hl = highlight_set(args.map, args.highlight, p, extra, ext, args.k)
    q = p * p if ext else p
    if args.format == "dot":
        color = "lightblue" if args.highlight == "cubes" else "lightgray"
        text = render_dot(g, hl, color)
    elif args.format == "json":
        text = render_json(g, q, args.map, hl)
    else:
        text = render_edges_csv(g)
    write_output(text, args.out)
    return EXIT_OK


def _run_one(task: tuple) -> dict:
    name, p = task
    rep = run_suite(name, p)
    d = rep.to_dict()
    d["suite"] = name
    return d


def cmd_verify(args) -> int:
    if args.theorems == "all":
        names = list(SUITES)
    else:
        names = [t.strip() for t in args.theorems.split(",") if t.strip()]
        unknown = [t for t in names if t not in SUITES]
        if unknown or not names:
            raise ConfigError(f"unknown theorem suites {unknown}; choose from {', '.join(SUITES)} or all")
    primes = _primes(args)
    tasks = [(n, p) for p in primes for n in names if applicable(n, p)]
    jobs = worker_count(args.jobs)
    if jobs <= 1 or len(tasks) <= 1:
        results = [_run_one(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_one, tasks, chunksize=4))
    results.sort(key=lambda r: (r["p"], names.index(r["suite"])))
    summary = {n: {"passed": 0, "failed": 0} for n in names}
    for r in results:
        summary[r["suite"]]["passed" if r["ok"] else "failed"] += 1
    ok = all(r["ok"] for r in results)
    doc = {
        "schema": SCHEMA,
        "theorems": names,
        "p_range": args.p_range or str(args.p),
        "primes": primes,
        "ok": ok,
        "summary": summary,
        "results": results,
    }
    write_output(json.dumps(doc, indent=2, sort_keys=True) + "\n", args.out)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_stats(args) -> int:
    if args.p_range:
        primes = parse_range(args.p_range)
    elif args.p is not None:
        primes = [_single_prime(args.p)]
    else:
        raise ConfigError("give --p or --p-range")
    ext = args.field == "ext"
    rows = []
    for p in primes:
        g, _ = build_map_graph(args.map, p, args.k, args.l, ext)
        rows.append(stats_record(g, p * p if ext else p, args.map))
    write_output(render_stats_csv(rows), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hessgraph", description="Hessian graphs over finite fields")
    sub = ap.add_subparsers(dest="command", required=True)

    def map_opts(sp):
        sp.add_argument("--map", choices=MAPS, default="hess")
        sp.add_argument("--k", type=int, default=None, help="k parameter (default -6912)")
        sp.add_argument("--l", type=int, default=None, help="l parameter for --map f (default -27)")
        sp.add_argument("--field", choices=("base", "ext"), default="base",
                        help="vertices over F_p or F_{p^2}")
        sp.add_argument("--out", default=None, help="output file (default stdout)")

    g = sub.add_parser("graph", help="emit one functional graph")
    g.add_argument("--p", type=int, required=True)
    map_opts(g)
    g.add_argument("--format", choices=("dot", "json", "csv"), default="dot")
    g.add_argument("--highlight", choices=("rational", "cubes"), default=None)
    g.set_defaults(func=cmd_graph)

    v = sub.add_parser("verify", help="run theorem suites over primes")
    v.add_argument("--theorems", default="all", help=f"all, or a comma list of: {', '.join(SUITES)}")
    v.add_argument("--p-range", default=None, help="inclusive range a..b")
    v.add_argument("--p", type=int, default=None)
    v.add_argument("--jobs", type=int, default=None, help="worker processes (default: cores)")
    v.add_argument("--out", default=None)
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("stats", help="CSV of graph statistics per prime")
    s.add_argument("--p-range", default=None)
    s.add_argument("--p", type=int, default=None)
    map_opts(s)
    s.set_defaults(func=cmd_stats)
    return ap


def main(argv: Optional[list] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_CONFIG if e.code else EXIT_OK
    try:
        return args.func(args)
    except ConfigError as e:
        print(f"hessgraph: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except ValueError as e:
        print(f"hessgraph: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as e:
        print(f"hessgraph: cannot write output: {e}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
