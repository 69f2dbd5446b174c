"""Command-line front end.

Exit codes: 0 success, 1 a verified identity failed, 2 bad input or a cap hit.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import geometry, orientations, parking, polynomials
from .errors import BigraphicalError, CapExceeded, InputError, VerificationError
from .graph import DEFAULT_MAX_CYCLES, sink_extension, spanning_tree_count
from .io import format_chip_config, load_graph, load_multigraph, resolve_parameters
from .orientations import DEFAULT_MAX_EDGES, AdmissibilityClass

EXIT_OK, EXIT_VERIFY, EXIT_INPUT = 0, 1, 2

COMMANDS = ("census", "labels", "verify", "parking", "tutte", "charpoly", "bounds", "reliability", "plot")


def _jsonable(obj):
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        return [_jsonable(v) for v in obj]
    return obj


def _params_block(A):
    block = {"selector": A.name, "values": {f"{i},{j}": str(v) for (i, j), v in A.items()}}
    if A.name.startswith("generic:"):
        block["seed"] = int(A.name.split(":", 1)[1])
    return block


def _setup(args):
    G = load_graph(args.graph)
    A = resolve_parameters(G, args.params, max_cycles=args.max_cycles)
    return G, A


def cmd_census(args):
    G, A = _setup(args)
    c = orientations.census(G, A, max_edges=args.max_edges)
    report = {"command": "census", "n": G.n, "edges": len(G.edges), "parameters": _params_block(A),
              "r": c.r, "b": c.b, "almost": c.almost, "far": c.far, "p": c.p}
    text = f"r={c.r} b={c.b} almost={c.almost} far={c.far} p={tuple(c.p)}"
    return report, text, True


def cmd_labels(args):
    G, A = _setup(args)
    multiset = parking.label_multiset(G, A, max_edges=args.max_edges)
    bfs = geometry.pak_stanley_bfs(G, A, max_edges=args.max_edges)
    agree = len(bfs) == sum(multiset.values()) and all(lab == O.indegree for O, lab in bfs.items())
    labels = sorted(multiset)
    report = {"command": "labels", "parameters": _params_block(A), "regions": sum(multiset.values()),
              "labels": labels, "multiplicity": {format_chip_config(k): v for k, v in sorted(multiset.items())},
              "bfs_regions": len(bfs), "bfs_agrees": agree}
    lines = [f"{format_chip_config(k)}  x{v}" for k, v in sorted(multiset.items())]
    lines.append(f"{len(labels)} distinct labels over {sum(multiset.values())} regions; "
                 f"BFS visited {len(bfs)} regions, agreement={'yes' if agree else 'NO'}")
    return report, "\n".join(lines), agree


def verify_pair(G, A, max_edges=DEFAULT_MAX_EDGES):
    """Run every cross-check available for one ``(G, A)``; returns ``[(name, ok, detail)]``."""
    checks = []
    Gs = sink_extension(G)
    all_O = list(orientations.all_orientations(G, max_edges))
    classes = {O: orientations.classify(O, A) for O in all_O}
    admissible = [O for O in all_O if classes[O] is AdmissibilityClass.ADMISSIBLE]

    mismatches = sum(
        1 for O in all_O
        if (geometry.strict_feasible(geometry.region_system(O, A)) is not None)
        != (classes[O] is AdmissibilityClass.ADMISSIBLE))
    checks.append(("farkas", mismatches == 0,
                   f"classification = strict feasibility on {len(all_O)} orientations ({mismatches} mismatches)"))

    pf = parking.enumerate_parking(Gs)
    labels = frozenset(O.indegree for O in admissible)
    checks.append(("labels", labels == pf, f"labels = parking functions ({len(pf)})"))

    acyc = parking.acyclic_indeg_set(G, max_edges)
    checks.append(("acyclic", acyc == pf, f"acyclic indegrees = parking functions ({len(acyc)})"))

    trees = spanning_tree_count(Gs)
    checks.append(("trees", trees == len(pf), f"spanning trees of G• = {trees}"))

    bfs = geometry.pak_stanley_bfs(G, A, max_edges)
    bfs_ok = len(bfs) == len(admissible) and all(lab == O.indegree for O, lab in bfs.items())
    checks.append(("bfs", bfs_ok, f"BFS labeled {len(bfs)} of {len(admissible)} regions by indegree"))

    h = parking.h_vector(Gs)
    p = [0] * (len(G.edges) + 1)
    for O in admissible:
        p[len(O)] += 1
    checks.append(("h<=p", all(x <= y for x, y in zip(h, p)), f"h={tuple(h)} p={tuple(p)}"))

    r_gen, _ = polynomials.generic_region_counts(G)
    lower, upper = orientations.region_count_bounds(G, A, max_edges)
    gap = r_gen - len(admissible)
    checks.append(("bounds", lower <= gap <= upper, f"{lower} <= r(GEN) - r = {gap} <= {upper}"))

    bad = 0
    for c in pf:
        target = next(O for O in all_O if O.is_acyclic() and O.indegree == c)
        O2 = orientations.realize_indegree(G, A, target)
        if classes[O2] is not AdmissibilityClass.ADMISSIBLE or O2.indegree != c:
            bad += 1
    checks.append(("realize", bad == 0, f"every parking function realized by an admissible orientation ({bad} failures)"))
    return checks


def cmd_verify(args):
    G, A = _setup(args)
    checks = verify_pair(G, A, args.max_edges)
    ok = all(c[1] for c in checks)
    report = {"command": "verify", "parameters": _params_block(A), "passed": ok,
              "checks": [{"name": n, "passed": p, "detail": d} for n, p, d in checks]}
    text = "\n".join(f"{'PASS' if p else 'FAIL'} {n}: {d}" for n, p, d in checks)
    return report, text, ok


def cmd_parking(args):
    G = load_graph(args.graph)
    Gs = sink_extension(G)
    pf = sorted(parking.enumerate_parking(Gs))
    h = parking.h_vector(Gs)
    report = {"command": "parking", "count": len(pf), "parking_functions": pf, "h": h}
    text = "\n".join(format_chip_config(c) for c in pf) + f"\ncount={len(pf)} h={tuple(h)}"
    return report, text, True


def cmd_tutte(args):
    G = load_multigraph(args.graph)
    T = polynomials.tutte(G)
    return {"command": "tutte", "tutte": T.to_json(), "string": str(T)}, f"T(x,y) = {T}", True


def cmd_charpoly(args):
    G = load_graph(args.graph)
    chi = polynomials.char_poly_generic(G)
    r, b = polynomials.generic_region_counts(G)
    report = {"command": "charpoly", "chi": chi.to_json(), "string": str(chi), "r": r, "b": b}
    return report, f"chi(t) = {chi}\nr(GEN)={r} b(GEN)={b}", True


def cmd_bounds(args):
    G, A = _setup(args)
    lower, upper = orientations.region_count_bounds(G, A, args.max_edges, args.max_cycles)
    r = orientations.census(G, A, args.max_edges).r
    r_gen, _ = polynomials.generic_region_counts(G)
    gap = r_gen - r
    ok = lower <= gap <= upper
    report = {"command": "bounds", "parameters": _params_block(A), "lower": lower, "upper": upper,
              "r": r, "r_generic": r_gen, "gap": gap, "sandwich": ok}
    return report, f"{lower} <= r(GEN) - r(A) = {r_gen} - {r} = {gap} <= {upper}", ok


def cmd_reliability(args):
    G = load_graph(args.graph)
    dual = load_multigraph(args.dual)
    connectivity, admissibility = polynomials.dual_probabilities(G, dual)
    ok = connectivity == admissibility
    report = {"command": "reliability", "dual_connected": connectivity,
              "generic_admissible": admissibility, "equal": ok}
    return report, f"P(dual stays connected) = {connectivity}\nP(generic-admissible) = {admissibility}", ok


def cmd_plot(args):
    from .render import render_svg

    G, A = _setup(args)
    doc = render_svg(G, A, args.out)
    if args.out is None:
        return None, doc.rstrip("\n"), True
    regions = doc.count('class="label"')
    return {"command": "plot", "out": args.out, "regions": regions}, f"wrote {args.out} ({regions} regions)", True


HANDLERS = {name: globals()[f"cmd_{name}"] for name in COMMANDS}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bigraph", description="Bigraphical arrangement toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--graph", required=True, help="graph file: 'n m' then m lines 'i j'")
        if name in ("census", "labels", "verify", "bounds", "plot"):
            p.add_argument("--params", default="semi",
                           help="semi | shi | interval:l1,...,ln | generic:SEED | file:PATH")
        if name == "reliability":
            p.add_argument("--dual", required=True, help="planar dual, multigraph format allowed")
        p.add_argument("--max-edges", type=int, default=DEFAULT_MAX_EDGES)
        p.add_argument("--max-cycles", type=int, default=DEFAULT_MAX_CYCLES)
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--out", default=None, help="output path (plot) ")
    return parser


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        report, text, ok = HANDLERS[args.command](args)
    except (InputError, CapExceeded, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except VerificationError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except BigraphicalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.format == "json" and report is not None:
        print(json.dumps(_jsonable(report), sort_keys=True), file=stdout)
    else:
        print(text, file=stdout)
    return EXIT_OK if ok else EXIT_VERIFY


def main():
    sys.exit(run())
