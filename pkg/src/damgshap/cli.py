"""Command line front end.

    damgshap moebius  FILE [--invert]
    damgshap shapley  FILE [--engine E] [--kernel K] [--table]
    damgshap project  FILE (--remove a,b | --onto a,b) [--cap N]
    damgshap paths    FILE [--from X --to Y]
    damgshap check    FILE
    damgshap demo     NAME

Exit status is 0 when the command succeeded and every PASS/FAIL row passed,
1 when some row failed, 2 on errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import demos
from .algebra import ValueFunction, convolve, inverse_moebius, moebius_function, moebius_transform
from .document import GraphDocument, dump_document, load_document
from .errors import DamgError
from .graph import enumerate_paths, is_topological_order, path_counts
from .pathalgebra import PathAlgebraElement
from .projection import DEFAULT_EDGE_CAP, drop_weak, null_elements, project_onto, project_subset, weak_elements
from .scalars import format_value, is_zero
from .shapley import shapley_path_uniform, shapley_recursive, shapley_total_weights, shapley_weighted
from .weights import extend_root_weights, kernel_total_weights, path_uniform_kernel

ENGINE_CHOICES = ("recursive", "total-weights", "path-uniform", "weighted")
KERNEL_CHOICES = ("path-uniform", "edge-uniform", "induced", "file")


class UsageError(DamgError):
    pass


def _labels(text: str) -> list[str]:
    return [x.strip() for x in text.split(",") if x.strip()]


def _emit(obj, fmt: str, out):
    if fmt == "json":
        out.write(json.dumps(obj, indent=2, ensure_ascii=False) + "\n")
    else:
        for row in obj:
            out.write("\t".join(_tsv_cell(c) for c in row) + "\n")


def _tsv_cell(c) -> str:
    if isinstance(c, list):
        return ",".join(str(x) for x in c)
    return str(c)


def _values_table(vf: ValueFunction, as_float: bool) -> dict:
    return {x: format_value(val, as_float) for x, val in vf.items()}


# -- verbs ---------------------------------------------------------------


def cmd_moebius(args, out) -> int:
    doc = load_document(args.file)
    vf = doc.value_function()
    res = inverse_moebius(vf) if args.invert else moebius_transform(vf)
    name = "value" if args.invert else "synergy"
    table = _values_table(res, args.float)
    if args.format == "json":
        _emit({name: table}, "json", out)
    else:
        _emit([("vertex", name)] + list(table.items()), "tsv", out)
    return 0


def _pick_kernel(doc: GraphDocument, engine: str, kernel: str | None):
    if engine == "path-uniform" and kernel not in (None, "path-uniform"):
        raise UsageError("--engine path-uniform fixes the kernel; drop --kernel or choose path-uniform")
    if engine == "weighted" and kernel not in (None, "induced"):
        raise UsageError("--engine weighted uses the induced kernel; drop --kernel or choose induced")
    if engine == "path-uniform":
        return path_uniform_kernel(doc.graph)
    if engine == "weighted":
        return doc.build_kernel("induced")
    return doc.build_kernel(kernel)


def attribution_report(doc: GraphDocument, engine: str = "recursive", kernel: str | None = None,
                       table: bool = False, as_float: bool = False) -> dict:
    g = doc.graph
    vf = doc.value_function()
    q = _pick_kernel(doc, engine, kernel)
    if engine == "recursive":
        sh = shapley_recursive(g, q, vf)
    elif engine == "total-weights":
        sh = shapley_total_weights(g, q, vf)
    elif engine == "path-uniform":
        sh = shapley_path_uniform(g, vf)
    else:
        sh = shapley_weighted(g, doc.sigma(), doc.tau(), vf)
    total_sh = sh.total()
    total_w = moebius_transform(vf).total()
    report = {
        "engine": sh.engine,
        "kernel": q.provenance,
        "shapley": {r: format_value(x, as_float) for r, x in sh.per_root.items()},
        "efficiency": {
            "sum_shapley": format_value(total_sh, as_float),
            "sum_synergy": format_value(total_w, as_float),
            "equal": total_sh == total_w,
        },
    }
    if table:
        s = kernel_total_weights(g, q)
        report["table"] = {
            r: {y: format_value(s[r, y], as_float) for y in g.order if s[r, y] != 0} for r in g.roots
        }
    return report


def cmd_shapley(args, out) -> int:
    doc = load_document(args.file)
    report = attribution_report(doc, args.engine, args.kernel, args.table, args.float)
    if args.format == "json":
        _emit(report, "json", out)
    else:
        rows = [("root", "shapley")] + list(report["shapley"].items())
        eff = report["efficiency"]
        rows += [("#engine", report["engine"]), ("#kernel", report["kernel"]),
                 ("#sum_shapley", eff["sum_shapley"]), ("#sum_synergy", eff["sum_synergy"])]
        if "table" in report:
            rows.append(("#root", "target", "s"))
            for r, row in report["table"].items():
                rows += [(r, y, val) for y, val in row.items()]
        _emit(rows, "tsv", out)
    return 0 if report["efficiency"]["equal"] else 1


def project_document(doc: GraphDocument, remove=None, onto=None, kernel: str | None = None,
                     cap: int = DEFAULT_EDGE_CAP) -> GraphDocument:
    g = doc.graph
    q = doc.build_kernel(kernel)
    w = moebius_transform(doc.value_function()) if doc.values is not None else None
    sigma = doc.sigma() if doc.edge_weights is not None else None
    if onto is not None:
        res = project_onto(g, q, w, onto, sigma=sigma, cap=cap)
    else:
        res = project_subset(g, q, w, remove or [], sigma=sigma, cap=cap)
    h = res.graph
    root_weights = None
    if doc.root_weights is not None:
        strength = extend_root_weights(g, doc.sigma(), doc.tau())
        root_weights = {r: strength[r] for r in h.roots}
    return GraphDocument(
        h,
        edge_weights=dict(res.edge_weights) if res.edge_weights is not None else None,
        root_weights=root_weights,
        values=res.value.to_dict() if res.value is not None else None,
        kernel=dict(res.kernel),
    )


def cmd_project(args, out) -> int:
    if (args.remove is None) == (args.onto is None):
        raise UsageError("give exactly one of --remove or --onto")
    doc = load_document(args.file)
    remove = _labels(args.remove) if args.remove is not None else None
    onto = _labels(args.onto) if args.onto is not None else None
    res = project_document(doc, remove, onto, args.kernel, args.cap)
    out.write(dump_document(res, args.float))
    return 0


def cmd_paths(args, out) -> int:
    doc = load_document(args.file)
    g = doc.graph
    if (args.source is None) != (args.target is None):
        raise UsageError("--from and --to go together")
    if args.source is not None:
        paths = enumerate_paths(g, args.source, args.target, cap=args.cap)
        if args.format == "json":
            _emit({"from": args.source, "to": args.target, "count": len(paths),
                   "paths": [list(p) for p in paths]}, "json", out)
        else:
            _emit([("path",)] + [(" ".join(p) or "(trivial)",) for p in paths], "tsv", out)
        return 0
    pi, totals = path_counts(g)
    if args.format == "json":
        counts = {x: {y: n for (a, y), n in pi.to_dict().items() if a == x} for x in g.order}
        _emit({"root_totals": totals, "counts": counts}, "json", out)
    else:
        rows = [("vertex", "pi")] + list(totals.items())
        rows.append(("#from", "to", "count"))
        rows += [(x, y, n) for (x, y), n in pi.to_dict().items()]
        _emit(rows, "tsv", out)
    return 0


def property_checks(doc: GraphDocument, kernel: str | None = None) -> list[demos.Check]:
    """Axioms and identities evaluated on one document."""
    g = doc.graph
    vf = doc.value_function().to_exact()
    q = doc.build_kernel(kernel)
    w = moebius_transform(vf)
    rows = [demos.Check("topological order certified", is_topological_order(g, g.order), True)]
    _, totals = path_counts(g)
    rec = all(
        totals[y] == sum(totals[g.order[p]] * m for p, m in g.parent_mult[j].items())
        for j, y in enumerate(g.order) if g.parent_mult[j]
    )
    rows.append(demos.Check("path count recursion", rec, True))
    rows.append(demos.Check("Moebius roundtrip", inverse_moebius(w), vf))
    if len(g.order) <= 400:
        mu = moebius_function(g)
        zeta, delta = PathAlgebraElement.zeta(g), PathAlgebraElement.delta(g)
        rows.append(demos.Check("zeta * mu = mu * zeta = delta",
                                (convolve(zeta, mu) == delta, convolve(mu, zeta) == delta), (True, True)))
    rows.append(demos.Check("kernel normalized", q.normalized, True))
    if not q.normalized:
        return rows
    s = kernel_total_weights(g, q)
    rows.append(demos.Check("root total weights sum to 1",
                            all(sum(s[r, y] for r in g.roots) == 1 for y in g.order), True))
    sh = shapley_recursive(g, q, vf)
    rows.append(demos.Check("recursive = total-weights", sh.per_root, shapley_total_weights(g, q, vf).per_root))
    if q.provenance == "path-uniform":
        rows.append(demos.Check("recursive = closed form", sh.per_root, shapley_path_uniform(g, vf).per_root))
    rows.append(demos.Check("efficiency", sh.total(), w.total()))
    nulls = null_elements(g, vf)
    rows.append(demos.Check("null roots get zero",
                            all(is_zero(sh[r]) for r in g.roots if r in nulls), True))
    non_roots = [x for x in g.order if not g.is_root(x)]
    try:
        res = project_subset(g, q, w, non_roots)
        rows.append(demos.Check("projection onto the roots", res.synergy.to_dict(), sh.per_root))
        weak = [x for x in weak_elements(g, vf) if not g.is_root(x)]
        h, qh, vh = drop_weak(g, q, vf, weak)
        rows.append(demos.Check("weak elements can be dropped", shapley_recursive(h, qh, vh).per_root, sh.per_root))
    except DamgError as exc:
        rows.append(demos.Check("projection", f"skipped: {exc}", "ran"))
    return rows


def _emit_checks(rows, fmt, out) -> int:
    if fmt == "json":
        _emit([{"check": r.name, "pass": r.passed, "got": _jsonable(r.got), "expected": _jsonable(r.expected)}
               for r in rows], "json", out)
    else:
        _emit([("status", "check", "got", "expected")]
              + [("PASS" if r.passed else "FAIL", r.name, _short(r.got), _short(r.expected)) for r in rows],
              "tsv", out)
    return 0 if all(r.passed for r in rows) else 1


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = sorted(x, key=str) if isinstance(x, (set, frozenset)) else x
        return [_jsonable(v) for v in items]
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, ValueFunction):
        return _jsonable(x.to_dict())
    try:
        return format_value(x)
    except (TypeError, ValueError):
        return str(x)


def _short(x) -> str:
    return json.dumps(_jsonable(x), ensure_ascii=False)


def cmd_check(args, out) -> int:
    doc = load_document(args.file)
    return _emit_checks(property_checks(doc, args.kernel), args.format, out)


def cmd_demo(args, out) -> int:
    names = sorted(demos.DEMOS) if args.name == "all" else [args.name]
    rows = []
    for name in names:
        for r in demos.run_demo(name):
            r.name = f"{name}: {r.name}"
            rows.append(r)
    return _emit_checks(rows, args.format, out)


# -- wiring --------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="damgshap", description="Moebius inversion and Shapley values on DAMGs")
    sub = p.add_subparsers(dest="verb", required=True)

    def common(sp, default_format="json"):
        sp.add_argument("--format", choices=("json", "tsv"), default=default_format)
        sp.add_argument("--float", action="store_true", help="render numbers as decimals (12 significant digits)")

    sp = sub.add_parser("moebius", help="synergy (Moebius transform) of the document's values")
    sp.add_argument("file")
    sp.add_argument("--invert", action="store_true", help="treat values as synergies and sum them up")
    common(sp)
    sp.set_defaults(func=cmd_moebius)

    sp = sub.add_parser("shapley", help="Shapley values of the roots")
    sp.add_argument("file")
    sp.add_argument("--engine", choices=ENGINE_CHOICES, default="recursive")
    sp.add_argument("--kernel", choices=KERNEL_CHOICES, default=None)
    sp.add_argument("--table", action="store_true", help="include total path weights s(r|y)")
    common(sp)
    sp.set_defaults(func=cmd_shapley)

    sp = sub.add_parser("project", help="project onto the complement of a vertex set")
    sp.add_argument("file")
    sp.add_argument("--remove", default=None, help="comma separated vertices to remove")
    sp.add_argument("--onto", default=None, help="comma separated vertices to keep")
    sp.add_argument("--kernel", choices=KERNEL_CHOICES, default=None)
    sp.add_argument("--cap", type=int, default=DEFAULT_EDGE_CAP, help="maximum number of edges")
    sp.add_argument("--float", action="store_true")
    sp.set_defaults(func=cmd_project)

    sp = sub.add_parser("paths", help="path counts, or the paths between two vertices")
    sp.add_argument("file")
    sp.add_argument("--from", dest="source", default=None)
    sp.add_argument("--to", dest="target", default=None)
    sp.add_argument("--cap", type=int, default=10_000)
    common(sp)
    sp.set_defaults(func=cmd_paths)

    sp = sub.add_parser("check", help="evaluate identities and axioms on a document")
    sp.add_argument("file")
    sp.add_argument("--kernel", choices=KERNEL_CHOICES, default=None)
    common(sp, "tsv")
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("demo", help="worked instances with known answers")
    sp.add_argument("name", help=f"one of {', '.join(sorted(demos.DEMOS))}, or all")
    common(sp, "tsv")
    sp.set_defaults(func=cmd_demo)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except (DamgError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
