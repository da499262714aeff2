"""tropbip command line.  Exit codes: 0 ok/yes, 1 no, 2 usage or input error, 3 budget."""

import argparse
import sys

from . import io
from .arrangement import (LabelError, OnHyperplane, XYPoint, enumerate_faces, enumerate_regions,
                          face_dimension, face_of_point, region_of_point)
from .cells import (BudgetExceeded, barvinok2_decide, catalogue, count_cells, locate_cells,
                    verify_subdivision)
from .counts import (brute_face_counts, brute_region_count, crosscheck, face_egf, large_egf,
                     region_count, region_egf, small_formula)
from .diagram import (cell_size_class, diagram_of, image_dimension, relations_v1,
                      relations_v2)
from .morphism import (NotGeneric, NotInOpenImage, eval_g, generic_fiber, linearization_rank,
                       preimage_in_region)
from .ratcore import rat, rat_json, rat_str

EXIT_OK, EXIT_NO, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(ValueError):
    pass


def _rats(text):
    return tuple(rat(t) for t in text.split(",") if t.strip())


def _label(args):
    return io.region_from_json(args.label)


def _matrix_text(G):
    cells = [[rat_str(v) for v in row] for row in G.rows]
    w = max(len(c) for row in cells for c in row)
    return "\n".join(" ".join(c.rjust(w) for c in row) for row in cells)


def _emit(args, obj, text):
    print(io.dumps(obj) if args.format == "json" else text)


def _shape(args):
    if args.m is None or args.n is None:
        raise UsageError("--m and --n are required")
    if args.m < 0 or args.n < 0:
        raise UsageError("--m and --n must be non-negative")
    return args.m, args.n


# -- subcommands ---------------------------------------------------------------------

def cmd_eval(args):
    p = io.param_from_json(io.load_payload(args.input))
    G = eval_g(p)
    _emit(args, io.matrix_to_json(G), _matrix_text(G))
    return EXIT_OK


def cmd_region_of(args):
    pt = XYPoint(_rats(args.x), _rats(args.y))
    r = region_of_point(pt)
    _emit(args, {"region": str(r)}, str(r))
    return EXIT_OK


def cmd_face_of(args):
    pt = XYPoint(_rats(args.x), _rats(args.y))
    f = face_of_point(pt)
    _emit(args, {"face": str(f), "dimension": face_dimension(f)}, str(f))
    return EXIT_OK


def cmd_diagram(args):
    d = diagram_of(_label(args))
    obj = {"rows": list(d.rows), "cols": list(d.cols),
           "colors": ["".join(d.color(r, c) for c in range(len(d.cols))) for r in range(len(d.rows))],
           "path": d.path}
    _emit(args, obj, d.render())
    return EXIT_OK


def cmd_relations(args):
    r = _label(args)
    v2 = sorted(relations_v2(diagram_of(r)))
    v1 = sorted(relations_v1(r))
    if args.version == "1":
        rels, obj = v1, {"relations": [io.relation_to_json(x) for x in v1]}
    elif args.version == "2":
        rels, obj = v2, {"relations": [io.relation_to_json(x) for x in v2]}
    else:
        rels = v2
        obj = {"relations": [io.relation_to_json(x) for x in v2], "agree": v1 == v2}
    text = "\n".join(map(str, rels)) or "(no relations)"
    if args.version == "both":
        text += f"\nversions agree: {v1 == v2}"
    _emit(args, obj, text)
    return EXIT_OK if args.version != "both" or v1 == v2 else EXIT_NO


def cmd_dim(args):
    r = _label(args)
    d = image_dimension(r)
    _emit(args, {"region": str(r), "dimension": d}, str(d))
    return EXIT_OK


def cmd_class(args):
    r = _label(args)
    c = cell_size_class(r)
    _emit(args, {"region": str(r), "sizeClass": c}, c)
    return EXIT_OK


def cmd_locate(args):
    G = io.matrix_from_json(io.load_payload(args.matrix))
    loc = locate_cells(G)
    obj = {"interiorOf": io.cell_to_json(loc.interior_of) if loc.interior_of else None,
           "closedContainers": [io.cell_to_json(c) for c in loc.closed_containers]}
    lines = [f"interior of small cell: {loc.interior_of.key if loc.interior_of else 'none'}"]
    lines += [f"closed {c.size_class} cell: {c.key}" for c in loc.closed_containers]
    _emit(args, obj, "\n".join(lines))
    return EXIT_OK


def cmd_decide(args):
    G = io.matrix_from_json(io.load_payload(args.matrix))
    d = barvinok2_decide(G)
    if args.certificate:
        if d:
            print(io.dumps(io.param_to_json(d.preimage)))
            print(f"region: {d.region}", file=sys.stderr)
        else:
            print("No", file=sys.stderr)
        return EXIT_OK if d else EXIT_NO
    obj = {"answer": "Yes" if d else "No"}
    if d:
        obj.update(region=str(d.region), preimage=io.param_to_json(d.preimage))
    _emit(args, obj, f"Yes\nregion: {d.region}" if d else "No")
    return EXIT_OK if d else EXIT_NO


def cmd_preimage(args):
    G = io.matrix_from_json(io.load_payload(args.matrix))
    r = io.region_from_json(args.label, G.m, G.n)
    p = preimage_in_region(G, r)
    obj = io.param_to_json(p)
    _emit(args, obj, io.dumps(obj))
    return EXIT_OK


def _parse_pins(text):
    pins = {"Am": 0, "bn": 0}
    if text:
        for part in text.split(","):
            key, sep, val = part.partition("=")
            if not sep or key.strip() not in pins:
                raise UsageError(f"bad pin {part!r}; expected Am=V,bn=V")
            pins[key.strip()] = rat(val)
    return pins["Am"], pins["bn"]


def cmd_fiber(args):
    G = io.matrix_from_json(io.load_payload(args.matrix))
    f = generic_fiber(G, _parse_pins(args.pin))
    obj = io.fiber_to_json(f)
    lines = [f"base region: {f.base_region}" + ("  (degenerate shape)" if f.degenerate else ""),
             "apex: " + ", ".join(f"{k[0]}_{k[1]}={rat_str(v)}" for k, v in f.apex.items())]
    for q in f.quadrants:
        bounds = ", ".join(f"{k[0]}_{k[1]} > {rat_str(q.bounds[k])}" for k in q.free)
        lines.append(f"{str(q.region):<24} {q.size_class:<8} {bounds}")
    _emit(args, obj, "\n".join(lines))
    return EXIT_OK


def cmd_enumerate(args):
    m, n = _shape(args)
    if args.what == "regions":
        items = (str(r) for r in enumerate_regions(m, n))
    elif args.what == "faces":
        items = (str(f) for f in enumerate_faces(m, n))
    else:
        which = "small" if args.what == "small-cells" else "large"
        items = (c.key for c in catalogue(m, n).of_class(which)) if m >= 2 and n >= 2 else iter(())
    if args.stream or args.format == "text":
        for s in items:
            print(s)
    else:
        print(io.dumps({"what": args.what, "m": m, "n": n, "items": list(items)}))
    return EXIT_OK


_METHODS = {"regions": ("brute", "egf", "formula"), "faces": ("brute", "egf"),
            "small": ("brute", "formula"), "large": ("brute", "egf")}


def cmd_count(args):
    m, n = _shape(args)
    if args.method not in _METHODS[args.what]:
        raise UsageError(f"--what {args.what} supports methods {', '.join(_METHODS[args.what])}")
    if args.what == "regions":
        val = {"brute": lambda: brute_region_count(m, n),
               "egf": lambda: int(region_egf(m, n).count(0, m, n)),
               "formula": lambda: region_count(m, n)}[args.method]()
        _emit(args, {"what": "regions", "m": m, "n": n, "count": val}, str(val))
    elif args.what == "faces":
        if args.method == "brute":
            tally = brute_face_counts(m, n)
        else:
            F = face_egf(m + n, m, n)
            tally = {k: int(F.count(k, m, n)) for k in range(m + n + 1) if F.count(k, m, n)}
        obj = {"what": "faces", "m": m, "n": n, "byDimension": {str(k): v for k, v in sorted(tally.items())},
               "total": sum(tally.values())}
        text = "\n".join(f"dim {k}: {v}" for k, v in sorted(tally.items())) + f"\ntotal: {obj['total']}"
        _emit(args, obj, text)
    elif args.method == "formula":
        val = small_formula(m, n)
        _emit(args, {"what": "small", "m": m, "n": n, "count": val}, str(val))
    elif args.method == "egf":
        val = int(large_egf(m, n).count(0, m, n))
        _emit(args, {"what": "large", "m": m, "n": n, "count": val}, str(val))
    else:
        c = count_cells(m, n, args.what)
        _emit(args, {"what": args.what, "m": m, "n": n, **c},
              f"distinct images: {c['distinctImages']}\npositive regions: {c['positiveRegions']}")
    return EXIT_OK


def _suite_relations(m, n):
    bad = [str(r) for r in enumerate_regions(m, n) if relations_v1(r) != relations_v2(diagram_of(r))]
    return {"suite": "relations", "m": m, "n": n, "passed": not bad, "mismatches": bad[:10]}


def _suite_dims(m, n):
    bad = [str(r) for r in enumerate_regions(m, n) if image_dimension(r) != linearization_rank(r)]
    return {"suite": "dims", "m": m, "n": n, "passed": not bad, "mismatches": bad[:10]}


def cmd_verify(args):
    m, n = _shape(args)
    if args.suite == "relations":
        rep = _suite_relations(m, n)
    elif args.suite == "dims":
        rep = _suite_dims(m, n)
    elif args.suite == "subdivisions":
        rep = verify_subdivision(m, n, args.samples, args.seed)
    else:
        cr = crosscheck(m, n)
        rep = {"suite": "counts", "passed": not cr.discrepancies, **cr.to_json()}
        if args.format == "text":
            print(cr.table())
            return EXIT_OK if rep["passed"] else EXIT_NO
    if args.format == "text" and "checks" in rep:
        for c in rep["checks"]:
            print(f"{'PASS' if c['passed'] else 'FAIL'}  {c['name']}  ({c['detail']})")
    elif args.format == "text":
        print(f"{'PASS' if rep['passed'] else 'FAIL'}  {args.suite} ({m},{n})")
        for bad in rep["mismatches"]:
            print(f"  mismatch: {bad}")
    else:
        print(io.dumps(rep))
    return EXIT_OK if rep["passed"] else EXIT_NO


# -- parser ---------------------------------------------------------------------------

def build_parser():
    p = argparse.ArgumentParser(prog="tropbip",
                                description="Exact tools for matrices of Barvinok rank at most 2.")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--jobs", type=int, default=1,
                   help="accepted for compatibility; work runs in one process")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        sp = sub.add_parser(name, help=help_text)
        sp.set_defaults(func=func)
        sp.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS)
        return sp

    sp = add("eval", cmd_eval, "evaluate g on a parameter point")
    sp.add_argument("--input", required=True, help="JSON file or inline JSON {a, A, b, B}")
    for name, func, text in (("region-of", cmd_region_of, "region label of a point (x, y)"),
                             ("face-of", cmd_face_of, "face label of a point (x, y)")):
        sp = add(name, func, text)
        sp.add_argument("--x", required=True, help="comma-separated rationals")
        sp.add_argument("--y", required=True, help="comma-separated rationals")
    for name, func, text in (("diagram", cmd_diagram, "black/white diagram of a region"),
                             ("dim", cmd_dim, "dimension of a region's image"),
                             ("class", cmd_class, "size class of a region's cell")):
        sp = add(name, func, text)
        sp.add_argument("--label", required=True)
    sp = add("relations", cmd_relations, "rectangle relations of a region's image")
    sp.add_argument("--label", required=True)
    sp.add_argument("--version", choices=("1", "2", "both"), default="2")
    sp = add("locate", cmd_locate, "cells containing a matrix")
    sp.add_argument("--matrix", required=True)
    sp = add("decide", cmd_decide, "decide Barvinok rank <= 2")
    sp.add_argument("--matrix", required=True)
    sp.add_argument("--certificate", action="store_true",
                    help="print only the preimage JSON (feed it to eval)")
    sp = add("preimage", cmd_preimage, "preimage of a matrix inside a region")
    sp.add_argument("--matrix", required=True)
    sp.add_argument("--label", required=True)
    sp = add("fiber", cmd_fiber, "fiber of a generic matrix")
    sp.add_argument("--matrix", required=True)
    sp.add_argument("--pin", default=None, help="gauge pins, e.g. Am=0,bn=0")
    sp = add("enumerate", cmd_enumerate, "list regions, faces or cells")
    sp.add_argument("--m", type=int)
    sp.add_argument("--n", type=int)
    sp.add_argument("--what", choices=("regions", "faces", "small-cells", "large-cells"),
                    default="regions")
    sp.add_argument("--stream", action="store_true", help="one item per line")
    sp = add("count", cmd_count, "count regions, faces or cells")
    sp.add_argument("--m", type=int)
    sp.add_argument("--n", type=int)
    sp.add_argument("--what", choices=("regions", "faces", "small", "large"), default="regions")
    sp.add_argument("--method", choices=("brute", "egf", "formula"), default="brute")
    sp = add("verify", cmd_verify, "run a verification suite")
    sp.add_argument("--m", type=int)
    sp.add_argument("--n", type=int)
    sp.add_argument("--suite", choices=("relations", "dims", "subdivisions", "counts"),
                    required=True)
    sp.add_argument("--samples", type=int, default=500)
    sp.add_argument("--seed", type=int, default=0)
    return p


def run(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"tropbip: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except NotGeneric as exc:
        print(f"tropbip: not generic: {exc}", file=sys.stderr)
        return EXIT_NO
    except NotInOpenImage as exc:
        print(f"tropbip: {exc}", file=sys.stderr)
        return EXIT_NO
    except (UsageError, LabelError, OnHyperplane, ValueError, TypeError, OSError) as exc:
        print(f"tropbip: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
