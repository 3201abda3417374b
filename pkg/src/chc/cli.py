"""Command line front end.

Exit codes: 0 found/true, 1 none/false (including budget exhaustion, which
the output labels explicitly), 2 error. JSON output is byte stable for a
given input and flags: keys sorted, no timing inside. Elapsed milliseconds
go to stderr so they never disturb golden comparisons.

Budget resolution order: --budget flag, CHC_BUDGET environment variable,
package default.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time

from .complex_core import (
    Triangulation,
    parse_fixture_spec,
    validate_surface,
)
from .errors import (
    BadParams,
    BudgetExceeded,
    ChcError,
    DegenerateTriangle,
    Disconnected,
    DisagreementDetected,
    FormatError,
    NotClosed,
    NotManifold,
    TooLarge,
)
from .dual_map import dualize
from .hamiltonian_disk import brute_force_chc, cycle_is_contractible, find_chc
from .proper_tree import DEFAULT_BUDGET, enumerate_proper_trees, find_proper_tree

CENSUS_FIXTURES = ("tetrahedron", "octahedron", "icosahedron", "cyclic7_torus",
                   "torus_grid:3x3", "torus_grid:3x4", "torus_grid:4x4")

# validation failures are a verdict about the input, not a usage problem
_VERDICT_ERRORS = (NotClosed, NotManifold, Disconnected, DegenerateTriangle)


def main(argv=None) -> int:
    try:
        args = _parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    t0 = time.perf_counter()
    try:
        code = args.func(args)
    except _VERDICT_ERRORS as exc:
        if args.command in ("validate", "info"):
            _emit(args, {"command": args.command, "ok": False,
                         "error": {"kind": type(exc).__name__, "detail": str(exc)}},
                  [f"invalid: {type(exc).__name__}: {exc}"])
            code = 1
        else:
            print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
            code = 2
    except (ChcError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        code = 2
    print(f"elapsed_ms={int((time.perf_counter() - t0) * 1000)}", file=sys.stderr)
    return code


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="chc",
        description="contractible Hamiltonian cycles in triangulated surfaces")
    sub = p.add_subparsers(dest="command", required=True)

    def cmd(name, fn, help):
        sp = sub.add_parser(name, help=help)
        sp.set_defaults(func=fn)
        sp.add_argument("--json", action="store_true", help="emit JSON")
        return sp

    def add_input(sp):
        g = sp.add_mutually_exclusive_group(required=True)
        g.add_argument("path", nargs="?", help="triangle list file")
        g.add_argument("--fixture", metavar="SPEC",
                       help="generate input, e.g. octahedron or torus_grid:3x4")

    def add_budget(sp):
        sp.add_argument("--budget", type=int, default=None,
                        help="search node budget (default CHC_BUDGET or "
                             f"{DEFAULT_BUDGET})")
        sp.add_argument("--threads", type=int, default=1,
                        help="worker threads for the tree search")

    sp = cmd("validate", _cmd_validate, "check the closed-surface conditions")
    add_input(sp)

    sp = cmd("info", _cmd_info, "print surface statistics")
    add_input(sp)

    sp = cmd("dual", _cmd_dual, "print the dual map face walks")
    add_input(sp)

    sp = cmd("find-tree", _cmd_find_tree, "search for proper trees in the dual map")
    add_input(sp)
    add_budget(sp)
    sp.add_argument("--all", action="store_true", help="enumerate instead of stopping at one")
    sp.add_argument("--cap", type=int, default=None, help="with --all, stop after N trees")

    sp = cmd("find-cycle", _cmd_find_cycle, "search for a contractible Hamiltonian cycle")
    add_input(sp)
    add_budget(sp)
    sp.add_argument("--oracle", action="store_true",
                    help="also run the brute-force oracle and compare")
    sp.add_argument("--oracle-limit", type=int, default=14,
                    help="vertex limit for the oracle (default 14)")

    sp = cmd("verify", _cmd_verify, "test a given cycle for contractibility")
    add_input(sp)
    sp.add_argument("--cycle", required=True, metavar="V1,V2,...",
                    help="comma-separated vertex labels")

    sp = cmd("gen", _cmd_gen, "write a fixture triangle list")
    sp.add_argument("spec", help="fixture spec, e.g. icosahedron or torus_grid:4x4")
    sp.add_argument("-o", "--out", default=None, help="output file (default stdout)")

    sp = cmd("census", _cmd_census, "table of fixtures with search and oracle verdicts")
    sp.add_argument("--fixtures", default=None,
                    help="comma-separated fixture specs (default the built-in seven)")
    add_budget(sp)
    sp.add_argument("--oracle-limit", type=int, default=16,
                    help="vertex limit for the oracle (default 16, covers the built-ins)")

    return p


def _load(args) -> Triangulation:
    if args.fixture:
        return parse_fixture_spec(args.fixture)
    return Triangulation.load(args.path)


def _budget(args) -> int:
    if args.budget is not None:
        return args.budget
    env = os.environ.get("CHC_BUDGET")
    if env:
        try:
            return int(env)
        except ValueError:
            raise BadParams(f"CHC_BUDGET must be an integer, got {env!r}") from None
    return DEFAULT_BUDGET


def _emit(args, payload: dict, text_lines: list[str]) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        for line in text_lines:
            print(line)


def _report_line(rep) -> str:
    d = rep.as_dict()
    return (f"n={d['vertex_count']} e={d['edge_count']} f={d['face_count']} "
            f"chi={d['chi']} q={d['equivelar_degree']} "
            f"orientable={'yes' if d['orientable'] else 'no'}")


def _tid(i: int) -> str:
    return f"t{i}"


def _cmd_validate(args) -> int:
    rep = validate_surface(_load(args))
    _emit(args, {"command": "validate", "ok": True, "report": rep.as_dict()},
          ["valid: " + _report_line(rep)])
    return 0


def _cmd_info(args) -> int:
    rep = validate_surface(_load(args))
    _emit(args, {"command": "info", "report": rep.as_dict()}, [_report_line(rep)])
    return 0


def _cmd_dual(args) -> int:
    t = _load(args)
    m, corr = dualize(t)
    walks = {corr.vertex_of[fid]: [_tid(u) for u in walk]
             for fid, walk in enumerate(m.face_walks)}
    payload = {
        "command": "dual",
        "dual_vertex_count": m.vertex_count,
        "dual_edge_count": len(m.edges),
        "walks": walks,
        "triangles": {_tid(i): list(tri) for i, tri in corr.triangle_of.items()},
    }
    lines = [f"{v}: " + " ".join(walks[v]) for v in t.vertices]
    _emit(args, payload, lines)
    return 0


def _tree_obj(tree, m, t) -> dict:
    from .proper_tree import check_proper
    verdict = check_proper(tree, m, t)
    return {
        "vertices": [_tid(u) for u in tree.sorted_vertices()],
        "edges": [[_tid(u), _tid(w)] for u, w in tree.sorted_edges()],
        "proper": verdict.proper,
        "violations": [{"condition": v.condition, "face": v.face_vertex,
                        "detail": v.detail} for v in verdict.violations],
    }


def _tree_line(obj) -> str:
    return ("tree: " + " ".join(obj["vertices"]) + "  edges: "
            + " ".join(f"{u}-{w}" for u, w in obj["edges"]))


def _cmd_find_tree(args) -> int:
    if args.cap is not None and not args.all:
        raise BadParams("--cap only makes sense together with --all")
    t = _load(args)
    m, _ = dualize(t)
    budget = _budget(args)

    if args.all:
        verdict = "none"
        try:
            trees = enumerate_proper_trees(m, t, cap=args.cap, budget=budget,
                                           threads=args.threads)
            if trees:
                verdict = "found"
        except BudgetExceeded as exc:
            trees = exc.partial
            verdict = "budget_exceeded"
        objs = [_tree_obj(tr, m, t) for tr in trees]
        payload = {"command": "find-tree", "budget": budget, "verdict": verdict,
                   "count": len(objs), "trees": objs}
        lines = [f"verdict: {verdict} ({len(objs)} trees)"] + [_tree_line(o) for o in objs]
        _emit(args, payload, lines)
        return 0 if verdict == "found" else 1

    res = find_proper_tree(m, t, budget=budget, threads=args.threads)
    objs = [_tree_obj(res.tree, m, t)] if res.tree else []
    payload = {"command": "find-tree", "budget": budget, "verdict": res.verdict,
               "expansions": res.expansions, "trees": objs}
    lines = [f"verdict: {res.verdict}"] + [_tree_line(o) for o in objs]
    _emit(args, payload, lines)
    return 0 if res.verdict == "found" else 1


def _cmd_find_cycle(args) -> int:
    t = _load(args)
    budget = _budget(args)
    res = find_chc(t, budget=budget, threads=args.threads)

    payload = {
        "command": "find-cycle",
        "budget": budget,
        "verdict": res.verdict,
        "expansions": res.expansions,
        "cycle": list(res.cycle) if res.cycle else None,
        "disk": [_tid(i) for i in res.disk.face_indices] if res.disk else None,
    }
    lines = [f"verdict: {res.verdict}"]
    if res.cycle:
        lines.append("cycle: " + ",".join(res.cycle))
        lines.append("disk: " + " ".join(_tid(i) for i in res.disk.face_indices))

    if args.oracle:
        oracle_cycle = brute_force_chc(t, max_vertices=args.oracle_limit)
        over = "found" if oracle_cycle else "none"
        agrees = (res.verdict == over) if res.verdict != "budget_exceeded" else None
        payload["oracle"] = {
            "verdict": over,
            "cycle": list(oracle_cycle) if oracle_cycle else None,
            "agrees": agrees,
        }
        lines.append(f"oracle: {over}"
                     + (" cycle " + ",".join(oracle_cycle) if oracle_cycle else ""))
        if agrees is False:
            _emit(args, payload, lines)
            raise DisagreementDetected(
                f"search said {res.verdict}, oracle said {over}")
        lines.append(f"agreement: {'yes' if agrees else 'not comparable'}")

    _emit(args, payload, lines)
    return 0 if res.verdict == "found" else 1


def _cmd_verify(args) -> int:
    t = _load(args)
    cycle = [v for v in args.cycle.split(",") if v]
    ok, witness = cycle_is_contractible(t, cycle)
    from .hamiltonian_disk import VertexCycle
    canon = list(VertexCycle(cycle))
    payload = {"command": "verify", "cycle": canon, "contractible": ok,
               "witness": [_tid(i) for i in witness] if witness else None}
    lines = [f"contractible: {'yes' if ok else 'no'}"]
    if witness:
        lines.append("witness: " + " ".join(_tid(i) for i in witness))
    _emit(args, payload, lines)
    return 0 if ok else 1


def _cmd_gen(args) -> int:
    t = parse_fixture_spec(args.spec)
    text = t.to_text()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def census(specs, budget: int = DEFAULT_BUDGET, oracle_limit: int = 16,
           threads: int = 1) -> list[dict]:
    """Rows of fixture statistics with both search verdicts.

    A found/none mismatch between the tree search and the oracle raises
    DisagreementDetected. Oracle rows beyond the vertex limit are marked
    "too_large"; rows where the search ran out of budget are not comparable.
    """
    rows = []
    for spec in specs:
        t = parse_fixture_spec(spec)
        rep = validate_surface(t)
        res = find_chc(t, budget=budget, threads=threads)
        try:
            oracle_cycle = brute_force_chc(t, max_vertices=oracle_limit)
            over = "found" if oracle_cycle else "none"
        except TooLarge:
            over = "too_large"
        comparable = res.verdict != "budget_exceeded" and over != "too_large"
        agree = (res.verdict == over) if comparable else None
        if agree is False:
            raise DisagreementDetected(
                f"{spec}: search said {res.verdict}, oracle said {over}")
        rows.append({
            "fixture": spec,
            "n": rep.vertex_count,
            "q": (rep.equivelar_degree if rep.equivelar_degree is not None
                  else "not equivelar"),
            "chi": rep.euler_characteristic,
            "orientable": rep.orientable,
            "tree": res.verdict,
            "oracle": over,
            "agree": agree,
        })
    return rows


def _cmd_census(args) -> int:
    if args.fixtures is None:
        specs = list(CENSUS_FIXTURES)
    else:
        specs = [s for s in args.fixtures.split(",") if s]
    rows = census(specs, budget=_budget(args), oracle_limit=args.oracle_limit,
                  threads=args.threads)
    payload = {"command": "census", "rows": rows}
    header = f"{'fixture':<16} {'n':>3} {'q':>3} {'chi':>4} {'orient':>6} {'tree':>8} {'oracle':>9} agree"
    lines = [header]
    for r in rows:
        agree = "-" if r["agree"] is None else ("yes" if r["agree"] else "no")
        lines.append(f"{r['fixture']:<16} {r['n']:>3} {str(r['q']):>3} {r['chi']:>4} "
                     f"{'yes' if r['orientable'] else 'no':>6} {r['tree']:>8} "
                     f"{r['oracle']:>9} {agree}")
    _emit(args, payload, lines)
    return 0


if __name__ == "__main__":
    sys.exit(main())
