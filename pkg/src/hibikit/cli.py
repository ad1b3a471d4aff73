"""Command-line front end."""

import argparse
import sys
from multiprocessing import Pool

from . import __version__
from .algebra import MonomialOrder, buchberger, initial_ideal, is_squarefree, mono_str, sample_orders
from .betti import betti_table, check_table_consistency, linearly_related_observed, pure_resolution_observed
from .errors import BoundExceeded, HibiError, NotDistributive, ParseError, TheoremViolated
from .hibi import join_meet_ideal, verify_gb_theorem
from .invariants import extremal_classification, is_regular_planar, level_necessary
from .io import dumps, load, parse_object
from .lattice import as_lattice, is_distributive, is_modular
from .planar import (
    count_max_cyclic,
    cut_edges,
    is_cyclic,
    is_simple,
    is_sporadic,
    linrel_predicted,
    max_chained_squares,
    pureres_predicted,
    reduce_to_simple,
    squares,
)
from .report import Check
from .sweep import ALL_CHECKS, Instance, Limits, betti_budget_ok, planar_instances, poset_instances, run_instance

EXIT_OK, EXIT_PARSE, EXIT_BOUND, EXIT_VIOLATION = 0, 2, 3, 4

ANALYZE_CHECKS = ("regularity", "gorenstein", "pseudo_gorenstein", "level", "gb", "birkhoff", "modular", "hilbert")


def _pair(text):
    try:
        a, b = (int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected two integers 'a,b', got {text!r}") from None
    return a, b


def _emit(obj, out=None):
    text = dumps(obj, indent=2) + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _instance(inp, limits):
    kind = {"poset": "poset", "lattice": "lattice", "planar_lattice": "planar"}[inp.kind]
    return Instance(kind, inp.obj, limits)


def _limits(args):
    return Limits(**{k: getattr(args, k) for k in Limits.__dataclass_fields__ if hasattr(args, k)})


# analyze


def _planar_block(L):
    block = {
        "points": len(L),
        "frame": [L.m, L.n],
        "squares": len(squares(L)),
        "cut_edges": len(cut_edges(L)),
        "max_chained_squares": max_chained_squares(L),
        "count_max_cyclic": count_max_cyclic(L),
        "simple": is_simple(L),
        "cyclic": is_cyclic(L),
        "sporadic": is_sporadic(L),
    }
    try:
        R = reduce_to_simple(L)
        block["reduced_points"] = [list(p) for p in R.sorted_points()]
        block["linrel_predicted"] = linrel_predicted(L)
        block["pureres_predicted"] = pureres_predicted(L).value
    except HibiError as exc:
        block["reduction_error"] = str(exc)
    return block


def cmd_analyze(args):
    inp = load(args.path)
    report = {"input": inp.raw}
    if inp.kind == "lattice":
        L = as_lattice(inp.obj)
        if not is_distributive(L):
            mod = is_modular(L)
            report["lattice"] = {"size": L.n, "distributive": False, "modular": bool(mod), "witness": mod.witness}
            report["checks"] = []
            _emit(report, args.json)
            return EXIT_OK
    inst = _instance(inp, _limits(args))
    checks, skipped = run_instance(inst, ANALYZE_CHECKS)
    D, hd, cd, P = inst.D, inst.hilbert, inst.canonical, inst.P
    report["lattice"] = {
        "size": D.n,
        "join_irreducibles": P.n,
        "distributive": True,
        "incomparable_pairs": len(D.lattice.poset.incomparable_pairs()),
    }
    report["invariants"] = {
        "f": list(hd.f),
        "h": list(hd.h),
        "dim": hd.dim,
        "projdim": hd.projdim,
        "reg": hd.reg,
        "a_invariant": hd.a_invariant,
        "hilbert_function": [hd.hilbert_function(k) for k in range(6)],
    }
    report["canonical"] = cd.as_dict()
    report["predicates"] = {
        "gorenstein": cd.gorenstein,
        "pseudo_gorenstein": cd.pseudo_gorenstein,
        "level": cd.level,
        "cover_inequality": level_necessary(P),
        "regular_planar": is_regular_planar(P),
        **extremal_classification(P, hd),
    }
    if inst.kind == "planar":
        report["planar"] = _planar_block(inst.source)
    if args.r:
        inst.limits.r_max = args.r
        more, sk = run_instance(inst, ["generalized"])
        checks += more
        skipped += sk
    if args.betti:
        max_i, max_j = args.betti
        table = betti_table(D, max_i + 1, max_j)
        try:
            check_table_consistency(D, table)
            checks.append(Check("Betti table consistency", True))
        except TheoremViolated as exc:
            checks.append(Check("Betti table consistency: " + exc.check, False, exc.witness))
        report["betti"] = table.as_dict()
    report["checks"] = checks
    report["skipped"] = skipped
    report["pass"] = all(c.passed for c in checks)
    _emit(report, args.json)
    return EXIT_OK if report["pass"] else EXIT_VIOLATION


# sweep


def _sweep_one(job):
    index, kind, data, names, limits = job
    source = parse_object(data).obj
    inst = Instance(kind, source, limits)
    try:
        checks, skipped = run_instance(inst, names)
    except HibiError as exc:
        checks, skipped = [Check(type(exc).__name__, False, str(exc))], []
    return {
        "index": index,
        "instance": data,
        "checks": [c.as_dict() for c in checks],
        "skipped": skipped,
        "pass": all(c.passed for c in checks),
    }


def _jobs(args, names, limits):
    k = 0
    if args.max_elements is not None:
        if args.max_elements > 6:
            raise BoundExceeded("max_elements", "poset sweeps are limited to 6 elements")
        for inst in poset_instances(args.max_elements, limits):
            yield (k, "poset", inst.describe(), names, limits)
            k += 1
    if args.planar_frame is not None:
        m, n = args.planar_frame
        if m > 4 or n > 4:
            raise BoundExceeded("planar_frame", "planar sweeps are limited to a 4 x 4 frame")
        for inst in planar_instances(m, n, limits):
            yield (k, "planar", inst.describe(), names, limits)
            k += 1


def cmd_sweep(args):
    names = ALL_CHECKS if args.checks == "all" else tuple(x.strip() for x in args.checks.split(",") if x.strip())
    unknown = [x for x in names if x not in ALL_CHECKS]
    if unknown:
        raise ParseError(f"unknown checks {unknown}; choose from {', '.join(ALL_CHECKS)}")
    if args.max_elements is None and args.planar_frame is None:
        raise ParseError("give --max-elements and/or --planar-frame")
    limits = _limits(args)
    jobs = list(_jobs(args, names, limits))
    out = open(args.out, "w", encoding="utf-8") if args.out else sys.stdout
    summary = {"instances": 0, "checks": 0, "violations": 0, "skipped": 0, "failed": []}
    try:
        if args.jobs > 1:
            pool = Pool(args.jobs)
            results = pool.imap(_sweep_one, jobs, chunksize=1)
        else:
            pool = None
            results = map(_sweep_one, jobs)
        for res in results:
            out.write(dumps(res) + "\n")
            out.flush()
            summary["instances"] += 1
            summary["checks"] += len(res["checks"])
            summary["skipped"] += len(res["skipped"])
            bad = [c["name"] for c in res["checks"] if not c["pass"]]
            if bad:
                summary["violations"] += len(bad)
                summary["failed"].append({"index": res["index"], "checks": bad})
        if pool is not None:
            pool.close()
            pool.join()
    finally:
        if out is not sys.stdout:
            out.close()
    sys.stderr.write(dumps({"summary": summary}) + "\n")
    return EXIT_OK if summary["violations"] == 0 else EXIT_VIOLATION


# groebner


def _parse_order(spec, H):
    """'degrevlex' or 'lex', optionally ':a,b,c' listing variables largest first."""
    kind, _, rest = spec.partition(":")
    if kind not in ("degrevlex", "lex"):
        raise ParseError(f"unknown order {kind!r}")
    if not rest:
        return MonomialOrder(kind, H.order().priority)
    names = [x.strip() for x in rest.split(",")]
    index = {name: k for k, name in enumerate(H.names)}
    if sorted(names) != sorted(H.names):
        raise ParseError(f"order must list every variable once: {', '.join(H.names)}")
    return MonomialOrder(kind, tuple(index[x] for x in names))


def _gb_block(G, order, names):
    ini = initial_ideal(G, order)
    return {
        "order": order.kind,
        "priority": [names[v] for v in order.priority],
        "basis": [g.to_str(order, names) for g in G],
        "initial_ideal": [mono_str(m, names) for m in ini],
        "squarefree": is_squarefree(ini),
    }


def _lattice_of(inp):
    if inp.kind == "poset":
        from .lattice import ideal_lattice

        return ideal_lattice(inp.obj).lattice
    if inp.kind == "planar_lattice":
        from .planar import to_lattice

        return to_lattice(inp.obj)
    return as_lattice(inp.obj)


def cmd_groebner(args):
    inp = load(args.path)
    L = _lattice_of(inp)
    H = join_meet_ideal(L)
    report = {"input": inp.raw, "variables": list(H.names), "generators": [g.to_str(H.order(), H.names) for g in H.generators]}
    checks = []
    try:
        from .lattice import distributive_lattice

        D = distributive_lattice(L)
    except NotDistributive:
        D = None
    report["distributive"] = D is not None
    if D is not None:
        try:
            rep = verify_gb_theorem(D)
            checks.append(Check("reduced GB is the Hibi generators with squarefree initial ideal", True, None))
            report["hibi_order"] = rep.data
        except TheoremViolated as exc:
            checks.append(Check(exc.check, False, exc.witness))
    order = _parse_order(args.order, H)
    report["basis"] = _gb_block(buchberger(H.generators, order), order, H.names)
    if args.sample_orders:
        sample = "all" if args.sample_orders == "all" else int(args.sample_orders)
        orders = list(sample_orders(H.nvars, sample, seed=args.seed))
        found = []
        for o in orders:
            G = buchberger(H.generators, o)
            if is_squarefree(initial_ideal(G, o)):
                found.append(_gb_block(G, o, H.names))
        report["sampled"] = {"orders": len(orders), "squarefree": len(found), "first_squarefree": found[0] if found else None}
        if found:
            report["summary"] = f"squarefree initial ideal found in {len(found)} of {len(orders)} orders"
        else:
            report["summary"] = f"no squarefree initial ideal found ({len(orders)} orders)"
    report["checks"] = checks
    report["pass"] = all(c.passed for c in checks)
    _emit(report, args.json)
    if "summary" in report:
        sys.stderr.write(report["summary"] + "\n")
    return EXIT_OK if report["pass"] else EXIT_VIOLATION


# betti


def cmd_betti(args):
    inp = load(args.path)
    inst = _instance(inp, _limits(args))
    D, hd = inst.D, inst.hilbert
    max_i = hd.projdim if args.max_i is None else args.max_i
    max_j = hd.projdim + hd.reg if args.max_degree is None else args.max_degree
    if max_j > args.betti_max_degree:
        raise BoundExceeded("betti_max_degree", f"total degree {max_j} > {args.betti_max_degree}")
    table = betti_table(D, max_i + 1, max_j)
    checks = []
    try:
        check_table_consistency(D, table)
        checks.append(Check("Betti table consistency", True))
    except TheoremViolated as exc:
        checks.append(Check(exc.check, False, exc.witness))
    report = {
        "input": inp.raw,
        "projdim": hd.projdim,
        "reg": hd.reg,
        "betti": table.as_dict(),
        "checks": checks,
        "pass": all(c.passed for c in checks),
    }
    _emit(report, args.json)
    return EXIT_OK if report["pass"] else EXIT_VIOLATION


# planar-classify


def cmd_planar_classify(args):
    inp = load(args.path)
    if inp.kind != "planar_lattice":
        raise ParseError("planar-classify expects a planar_lattice input")
    L = inp.obj
    report = {"input": inp.raw, "planar": _planar_block(L), "checks": []}
    if args.observe:
        inst = Instance("planar", L, _limits(args))
        if not betti_budget_ok(inst):
            raise BoundExceeded("betti_max_degree", "resolution too large to observe")
        lin = linearly_related_observed(inst.D)
        pure = pure_resolution_observed(inst.D)
        report["observed"] = {"linearly_related": lin.verdict, "pure": pure.verdict, "complete": lin.complete and pure.complete}
        block = report["planar"]
        if "linrel_predicted" in block:
            report["checks"] = [
                Check("linearly related: prediction equals observation", block["linrel_predicted"] == lin.verdict, {"observed": lin.verdict}),
                Check("pure resolution: prediction equals observation", (block["pureres_predicted"] != "none") == pure.verdict, {"observed": pure.verdict}),
            ]
    report["pass"] = all(c.passed for c in report["checks"])
    _emit(report, args.json)
    return EXIT_OK if report["pass"] else EXIT_VIOLATION


def _add_limits(p, *names):
    d = Limits()
    help_text = {
        "gb_max_lattice": "largest lattice for Buchberger checks",
        "hilbert_max_k": "highest degree compared against multichain counts",
        "r_max": "largest r for generalized Hibi comparisons",
        "generalized_max_elements": "largest |P| (r - 1) for generalized comparisons",
        "betti_max_lattice": "largest lattice for Betti computations",
        "betti_max_degree": "largest total degree for Betti computations",
    }
    for name in names:
        p.add_argument("--" + name.replace("_", "-"), type=int, default=getattr(d, name), help=help_text[name])


def build_parser():
    fmt = argparse.ArgumentDefaultsHelpFormatter
    parser = argparse.ArgumentParser(
        prog="hibikit",
        description="Hibi rings of finite posets and distributive lattices. "
        "Set HIBI_MAX_MEM to cap the entries of elimination matrices (default 50000000).",
        formatter_class=fmt,
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="full report for one input", formatter_class=fmt)
    p.add_argument("path")
    p.add_argument("--r", type=int, default=None, help="also compare with the generalized Hibi ring for r")
    p.add_argument("--betti", type=_pair, default=None, metavar="MAX_I,MAX_DEG", help="Betti table of the ideal up to these bounds")
    p.add_argument("--json", default=None, metavar="OUT", help="write the report here instead of stdout")
    _add_limits(p, "gb_max_lattice", "hilbert_max_k", "generalized_max_elements", "betti_max_lattice", "betti_max_degree")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("sweep", help="run checks over enumerated instances", formatter_class=fmt)
    p.add_argument("--max-elements", type=int, default=None, help="enumerate posets with up to this many elements (at most 6)")
    p.add_argument("--planar-frame", type=_pair, default=None, metavar="M,N", help="enumerate planar lattices inside this frame (at most 4,4)")
    p.add_argument("--checks", default="all", help="comma-separated subset of: " + ", ".join(ALL_CHECKS))
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.add_argument("--out", default=None, help="JSON-lines output file (default stdout)")
    _add_limits(p, *Limits.__dataclass_fields__)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("groebner", help="Groebner bases of the join-meet ideal", formatter_class=fmt)
    p.add_argument("path")
    p.add_argument("--order", default="degrevlex", help="'degrevlex' or 'lex', optionally ':x,y,...' with variables largest first")
    p.add_argument("--sample-orders", default=None, metavar="N|all", help="look for a squarefree initial ideal among sampled orders")
    p.add_argument("--seed", type=int, default=0, help="seed for sampled orders")
    p.add_argument("--json", default=None, metavar="OUT")
    p.set_defaults(func=cmd_groebner)

    p = sub.add_parser("betti", help="graded Betti numbers of the Hibi ideal", formatter_class=fmt)
    p.add_argument("path")
    p.add_argument("--max-i", type=int, default=None, help="highest homological degree (default: projdim)")
    p.add_argument("--max-degree", type=int, default=None, help="highest total degree (default: projdim + reg)")
    p.add_argument("--json", default=None, metavar="OUT")
    _add_limits(p, "betti_max_degree")
    p.set_defaults(func=cmd_betti)

    p = sub.add_parser("planar-classify", help="classification data for a planar lattice", formatter_class=fmt)
    p.add_argument("path")
    p.add_argument("--observe", action="store_true", help="also compute the resolution and compare")
    p.add_argument("--json", default=None, metavar="OUT")
    _add_limits(p, "betti_max_lattice", "betti_max_degree")
    p.set_defaults(func=cmd_planar_classify)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        sys.stderr.write(f"parse error: {exc}\n")
        return EXIT_PARSE
    except BoundExceeded as exc:
        sys.stderr.write(f"bound exceeded [{exc.bound}]: {exc}\n")
        return EXIT_BOUND
    except TheoremViolated as exc:
        sys.stderr.write(dumps({"violated": exc.check, "witness": exc.witness}) + "\n")
        return EXIT_VIOLATION
    except HibiError as exc:
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
