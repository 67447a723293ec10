"""Command-line front end.

Exit codes:
  0  everything certified
  2  a mathematical failure was found (reducible, not separated, not generic)
  3  incomplete result (resource cap hit)
  64 usage error (bad flags, malformed input files)
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from importlib import resources
from pathlib import Path

from . import __version__
from .certify import DEFAULT_BUDGET, IRREDUCIBLE, REDUCIBLE, UNKNOWN, irreducible, run_suite, separated
from .charpoly import charpoly, verify_deletion_factorization
from .geometry import (
    LiftError,
    Sites,
    genericity_check,
    geo_components,
    geo_graph,
    lift_component,
    search_generic_sites,
    to_dot,
)
from .group import Edge, GElem, MarkedGraph, canonicalize, complete_graph, enumerate_edges
from .multipoly import MPoly, TPoly
from .nfmatrix import build_matrix, raw_matrix

log = logging.getLogger("melnikov")

EXIT_OK = 0
EXIT_FAILURE = 2
EXIT_INCOMPLETE = 3
EXIT_USAGE = 64

JOBS_ENV = "MELNIKOV_JOBS"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def load_schema(name: str) -> dict:
    """A shipped JSON schema, by file stem (``edges``, ``report``, ...)."""
    path = resources.files("melnikov") / "schemas" / f"{name}.schema.json"
    return json.loads(path.read_text())


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _read_json(path: str) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


def _opt(args, config: dict, name: str, default=None):
    v = getattr(args, name, None)
    if v is None:
        v = config.get(name, default)
    return v


def _need(value, flag: str):
    if value is None:
        raise UsageError(f"{flag} is required (flag or config file)")
    return value


# -- edges ---------------------------------------------------------------

def cmd_edges(args, config) -> int:
    q = _need(_opt(args, config, "q"), "--q")
    m = _need(_opt(args, config, "m"), "--m")
    try:
        edges = enumerate_edges(q, m)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    black = [e for e in edges if e.color == "black"]
    red = [e for e in edges if e.color == "red"]
    if args.format == "json":
        _emit(_dump({
            "schema": "melnikov/edges/1",
            "q": q, "m": m,
            "black": [list(e.n) for e in black],
            "red": [list(e.n) for e in red],
            "counts": {"black": len(black), "red": len(red), "total": len(edges)},
        }), args.out)
    else:
        lines = [f"q={q} m={m}: {len(black)} black, {len(red)} red"]
        lines += ["black " + " ".join(map(str, e.n)) for e in black]
        lines += ["red " + " ".join(map(str, e.n)) for e in red]
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


# -- graph input ---------------------------------------------------------

def _parse_one_edge(spec: str, m: int | None) -> Edge:
    try:
        n = [int(x) for x in spec.replace(" ", "").split(",") if x]
    except ValueError as exc:
        raise UsageError(f"malformed edge {spec!r}") from exc
    if m is not None:
        if m < len(n):
            raise UsageError(f"edge {spec!r} is longer than m={m}")
        n += [0] * (m - len(n))
    try:
        return Edge(tuple(n))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _graph_from_args(args, config) -> MarkedGraph:
    q = _opt(args, config, "q")
    m = _opt(args, config, "m")
    if args.one_edge and args.graph:
        raise UsageError("give either a graph file or --one-edge, not both")
    if args.one_edge:
        q = _need(q, "--q")
        ell = _parse_one_edge(args.one_edge, m)
        if not ell.is_valid(q):
            raise UsageError(f"{ell.n} is not an edge for q={q}")
        g = complete_graph([GElem.identity(len(ell.n)), ell.as_gelem()], q)
    elif args.graph:
        data = _read_json(args.graph)
        if not isinstance(data, dict):
            raise UsageError("malformed graph file: expected a JSON object")
        if q is not None:
            data.setdefault("q", q)
        _need(data.get("q"), "--q")
        try:
            g = MarkedGraph.from_json(data)
        except (KeyError, TypeError, ValueError) as exc:
            raise UsageError(f"malformed graph file: {exc}") from exc
    else:
        raise UsageError("a graph file or --one-edge is required")
    if not g.is_connected():
        raise UsageError("graph is not connected; split it into components first")
    return g


def cmd_charpoly(args, config) -> int:
    g = _graph_from_args(args, config)
    chi = charpoly(build_matrix(g))
    if args.format == "json":
        _emit(_dump({
            "schema": "melnikov/charpoly/1",
            "graph": g.to_json(),
            "chi": chi.render(),
            "coefficients": chi.to_json(),
        }), args.out)
    else:
        _emit(chi.render() + "\n", args.out)
    return EXIT_OK


def cmd_matrix(args, config) -> int:
    g = _graph_from_args(args, config)
    M = build_matrix(g)
    if args.raw:
        M = raw_matrix(M, g.q)
    if args.format == "json":
        out = M.to_json()
        out["schema"] = "melnikov/matrix/1"
        out["normalized"] = not args.raw
        _emit(_dump(out), args.out)
    else:
        lines = []
        for i, row in enumerate(M.entries):
            v = M.vertex_order[i]
            lines.append(f"[{i}] a={list(v.a)} sigma={v.sigma:+d}")
            for j, e in enumerate(row):
                if not e.is_zero():
                    lines.append(f"  ({i},{j}) {e.render()}")
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_deletion(args, config) -> int:
    g = _graph_from_args(args, config)
    reports = []
    variables = [args.var] if args.var else range(1, g.m + 1)
    for i in variables:
        if not 1 <= i <= g.m:
            raise UsageError(f"variable index {i} outside 1..{g.m}")
        reports.append(verify_deletion_factorization(g, i).to_json())
    ok = all(r["ok"] for r in reports)
    if args.format == "json":
        _emit(_dump({"schema": "melnikov/deletion/1", "ok": ok, "reports": reports}), args.out)
    else:
        lines = [f"x{r['variable']}=0: {'ok' if r['ok'] else 'MISMATCH'}  {r['lhs']}" for r in reports]
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK if ok else EXIT_FAILURE


# -- certify -------------------------------------------------------------

def _planted(m: int) -> TPoly:
    x1 = MPoly.var(1, m)
    return TPoly([-(x1 * x1), MPoly.zero(m), MPoly.const(1, m)], m)


def _jobs(args, config) -> int:
    jobs = _opt(args, config, "jobs")
    if jobs is None:
        env = os.environ.get(JOBS_ENV)
        try:
            jobs = int(env) if env else 1
        except ValueError as exc:
            raise UsageError(f"{JOBS_ENV} must be an integer") from exc
    if jobs < 1:
        raise UsageError("--jobs must be >= 1")
    return jobs


def _verdict_exit(report: dict) -> int:
    if report["summary"]["reducible"] or report["summary"]["non_separated_pairs"]:
        return EXIT_FAILURE
    if report.get("incomplete"):
        return EXIT_INCOMPLETE
    return EXIT_OK


def _summary_text(report: dict) -> str:
    s = report["summary"]
    lines = [
        f"graphs: {s['graphs']}  irreducible: {s['irreducible']}  reducible: {s['reducible']}  "
        f"unknown: {s['unknown']}",
        f"pairs: {s['pairs']}  not separated: {s['non_separated_pairs']}",
    ]
    if report.get("incomplete"):
        lines.append("INCOMPLETE: resource cap reached")
    if report.get("unknown_warning"):
        lines.append("warning: some graphs could not be certified within the budget")
    for e in report["graphs"]:
        if e["verdict"] != IRREDUCIBLE:
            lines.append(f"{e['verdict']}: {e['chi']}")
    return "\n".join(lines) + "\n"


def cmd_certify(args, config) -> int:
    q = _need(_opt(args, config, "q"), "--q")
    m = _need(_opt(args, config, "m"), "--m")
    max_dim = _opt(args, config, "max_dim", 1)
    budget = _opt(args, config, "budget", DEFAULT_BUDGET)
    if q < 1 or m < 2 or max_dim < 0 or budget < 1:
        raise UsageError("need q >= 1, m >= 2, --max-dim >= 0, --budget >= 1")
    extra = [("planted-reducible", _planted(m))] if args.planted_reducible else []
    report = run_suite(
        q, m, max_dim, budget=budget, jobs=_jobs(args, config), max_graphs=args.max_graphs,
        pairs=not args.no_pairs, symbolic=args.symbolic, seed=args.seed, extra=extra,
    )
    if args.out:
        Path(args.out).write_text(_dump(report))
    if args.format == "json" and not args.out:
        sys.stdout.write(_dump(report))
    else:
        sys.stdout.write(_summary_text(report))
    return _verdict_exit(report)


# -- geometry ------------------------------------------------------------

def _sites(args, config) -> Sites:
    data = _read_json(args.sites) if args.sites else config.get("sites")
    if data is None:
        raise UsageError("a sites file (or 'sites' in the config) is required")
    try:
        return Sites.from_json(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"malformed sites: {exc}") from exc


def _lift_all(components, sites: Sites, q: int, budget: int, seed):
    classes = {}
    errors = []
    for c in components:
        if c.flagged:
            continue
        try:
            G = canonicalize(lift_component(c, sites, q))
        except LiftError as exc:
            errors.append({"points": [list(p) for p in c.points], "error": str(exc)})
            continue
        classes.setdefault(G.key(), (G, len(c.edges)))
    entries = []
    chis = []
    for G, geo_edges in classes.values():
        chi = charpoly(build_matrix(G))
        cert = irreducible(chi, budget, seed)
        chis.append(chi)
        entries.append({
            "canonical": G.to_json(), "dimension": G.dimension, "chi": chi.render(),
            "verdict": cert.verdict, "evidence": cert.evidence,
            "geometric_edges": geo_edges, "cayley_edges": len(G.edges),
        })
    pairs = []
    for i in range(len(chis)):
        for j in range(i + 1, len(chis)):
            rep = separated(chis[i], chis[j], seed=seed)
            pairs.append({"i": i, "j": j, "separated": rep.separated, "flags": rep.flags()})
    return entries, pairs, errors


def cmd_geometry(args, config) -> int:
    sites = _sites(args, config)
    q = _need(_opt(args, config, "q"), "--q")
    R = _need(_opt(args, config, "R"), "--R")
    budget = _opt(args, config, "budget", DEFAULT_BUDGET)
    try:
        g = geo_graph(sites, q, R)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if args.dot:
        Path(args.dot).write_text(to_dot(g))
    if args.graph_json:
        Path(args.graph_json).write_text(_dump(g.to_json()))
    code = EXIT_OK
    if args.check_generic:
        rep = genericity_check(sites, q, R, graph=g)
        out = rep.to_json()
        out.update(sites=sites.to_json(), q=q, R=R)
        text = f"{'pass' if rep.passed else 'FAIL'}  " + "  ".join(f"{k}: {v}" for k, v in rep.counts.items())
        if rep.exploratory:
            text += "  (exploratory: n not in {1, 2})"
        code = EXIT_OK if rep.passed else EXIT_FAILURE
    elif args.lift:
        comps = geo_components(g)
        entries, pairs, errors = _lift_all(comps, sites, q, budget, args.seed)
        out = {
            "schema": "melnikov/lift/1",
            "sites": sites.to_json(), "q": q, "R": R,
            "graphs": entries, "pairs": pairs, "lift_errors": errors,
            "skipped_flagged": sum(1 for c in comps if c.flagged),
        }
        bad = errors or any(e["verdict"] == REDUCIBLE for e in entries) or any(not p["separated"] for p in pairs)
        lines = [f"{e['verdict']}: {e['chi']}" for e in entries]
        lines.append(f"classes: {len(entries)}  pairs: {len(pairs)}  "
                     f"not separated: {sum(1 for p in pairs if not p['separated'])}  lift errors: {len(errors)}")
        if any(e["verdict"] == UNKNOWN for e in entries):
            lines.append("warning: some graphs could not be certified within the budget")
        text = "\n".join(lines)
        code = EXIT_FAILURE if bad else EXIT_OK
    else:
        comps = geo_components(g)
        counts: dict = {}
        for c in comps:
            key = "boundary" if c.flagged and c.kind != "larger" else c.kind
            counts[key] = counts.get(key, 0) + 1
        out = {
            "schema": "melnikov/components/1",
            "sites": sites.to_json(), "q": q, "R": R,
            "counts": counts,
            "components": [c.to_json() for c in comps if len(c.points) > 1],
        }
        text = "  ".join(f"{k}: {v}" for k, v in sorted(counts.items()))
    if args.format == "json":
        _emit(_dump(out), args.out)
    else:
        _emit(text + "\n", args.out)
    return code


def cmd_search_sites(args, config) -> int:
    q = _need(_opt(args, config, "q"), "--q")
    R = _need(_opt(args, config, "R"), "--R")
    if args.n < 1 or args.m < 2:
        raise UsageError("need --n >= 1 and --m >= 2")
    try:
        sites, rep, tries = search_generic_sites(
            args.n, args.m, q, R, radius=args.radius, seed=args.seed, max_tries=args.max_tries
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if sites is None:
        sys.stderr.write(f"no generic sites found in {tries} tries\n")
        return EXIT_INCOMPLETE
    _emit(_dump(sites.to_json()), args.out)
    log.info("found after %d tries: %s", tries, rep.counts)
    return EXIT_OK


# -- parser --------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="melnikov", description="Exact block matrices, characteristic polynomials "
                "and irreducibility/separation certificates for colored marked graphs.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("--config", help="JSON file preloading q, m, R, sites, budget, jobs, max_dim")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, m=True):
        sp.add_argument("--q", type=int)
        if m:
            sp.add_argument("--m", type=int)
        sp.add_argument("--format", choices=("text", "json"), default="text")
        sp.add_argument("--out", help="write output to this file")

    sp = sub.add_parser("edges", help="list the edge set X_q in Z^m")
    common(sp)
    sp.set_defaults(func=cmd_edges)

    for name, func, helptext in (
        ("charpoly", cmd_charpoly, "characteristic polynomial of a graph"),
        ("matrix", cmd_matrix, "normalized block matrix of a graph"),
        ("deletion", cmd_deletion, "check the deletion factorization at x_i = 0"),
    ):
        sp = sub.add_parser(name, help=helptext)
        sp.add_argument("graph", nargs="?", help="graph JSON file {m, q?, vertices: [{a, sigma}]}")
        sp.add_argument("--one-edge", help='inline edge, e.g. "+1,-1"; the graph is {0, l}')
        common(sp)
        if name == "matrix":
            sp.add_argument("--raw", action="store_true", help="unnormalized (q+1)-scaled matrix")
        if name == "deletion":
            sp.add_argument("--var", type=int, help="variable index (default: all)")
        sp.set_defaults(func=func)

    sp = sub.add_parser("certify", help="enumerate graphs and certify irreducibility/separation")
    common(sp)
    sp.add_argument("--max-dim", dest="max_dim", type=int)
    sp.add_argument("--budget", type=int)
    sp.add_argument("--jobs", type=int, help=f"worker processes (default ${JOBS_ENV} or 1)")
    sp.add_argument("--max-graphs", dest="max_graphs", type=int, help="cap; exceeding it marks the report incomplete")
    sp.add_argument("--seed", type=int, help="random specialization points instead of the prime grid")
    sp.add_argument("--no-pairs", dest="no_pairs", action="store_true")
    sp.add_argument("--symbolic", action="store_true", help="always compute resultants symbolically")
    sp.add_argument("--planted-reducible", dest="planted_reducible", action="store_true",
                    help="add t^2 - x1^2 as a negative control")
    sp.set_defaults(func=cmd_certify)

    sp = sub.add_parser("geometry", help="geometric graph on the normal sites")
    sp.add_argument("sites", nargs="?", help="sites JSON file {n, v}")
    common(sp, m=False)
    sp.add_argument("--R", type=int)
    sp.add_argument("--budget", type=int)
    sp.add_argument("--seed", type=int)
    sp.add_argument("--dot", help="also write a DOT file")
    sp.add_argument("--graph-json", dest="graph_json", help="also write the graph as JSON")
    mode = sp.add_mutually_exclusive_group()
    mode.add_argument("--check-generic", dest="check_generic", action="store_true")
    mode.add_argument("--components", action="store_true", help="component census (default)")
    mode.add_argument("--lift", action="store_true", help="lift components and certify them")
    sp.set_defaults(func=cmd_geometry)

    sp = sub.add_parser("search-sites", help="sample sites until the genericity check passes")
    common(sp, m=False)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--R", type=int)
    sp.add_argument("--radius", type=int)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--max-tries", dest="max_tries", type=int, default=500)
    sp.set_defaults(func=cmd_search_sites)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        config = _read_json(args.config) if args.config else {}
        if not isinstance(config, dict):
            raise UsageError("config file must hold a JSON object")
        return args.func(args, config)
    except UsageError as exc:
        sys.stderr.write(f"melnikov: error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
