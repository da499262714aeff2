"""JSON codecs.  Rationals travel as integers or "p/q" strings, never floats."""

import json

from .arrangement import FaceLabel, RegionLabel
from .morphism import ParamPoint
from .ratcore import Matrix, rat, rat_json


def matrix_to_json(G):
    return {"m": G.m, "n": G.n, "entries": [[rat_json(v) for v in row] for row in G.rows]}


def matrix_from_json(obj):
    if isinstance(obj, list):
        obj = {"entries": obj}
    if not isinstance(obj, dict) or "entries" not in obj:
        raise ValueError("matrix JSON needs an 'entries' array")
    rows = obj["entries"]
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise ValueError("'entries' must be a non-empty list of rows")
    G = Matrix(tuple(tuple(rat(v) for v in row) for row in rows))
    m, n = obj.get("m", G.m), obj.get("n", G.n)
    if (m, n) != G.shape:
        raise ValueError(f"declared shape {(m, n)} does not match entries of shape {G.shape}")
    return G


def param_to_json(p):
    return {k: [rat_json(v) for v in getattr(p, k)] for k in ("a", "A", "b", "B")}


def param_from_json(obj):
    if not isinstance(obj, dict):
        raise ValueError("parameter JSON must be an object with keys a, A, b, B")
    missing = [k for k in ("a", "A", "b", "B") if k not in obj]
    if missing:
        raise ValueError(f"parameter JSON is missing {', '.join(missing)}")
    vecs = {}
    for k in ("a", "A", "b", "B"):
        if not isinstance(obj[k], list):
            raise ValueError(f"'{k}' must be a list of rationals")
        vecs[k] = tuple(rat(v) for v in obj[k])
    return ParamPoint(**vecs)


def relation_to_json(rel):
    return {"i1": rel.i1, "i2": rel.i2, "j1": rel.j1, "j2": rel.j2, "kind": rel.kind}


def cell_to_json(cell):
    return {"m": cell.m, "n": cell.n, "sizeClass": cell.size_class,
            "key": cell.key,
            "relations": [relation_to_json(r) for r in sorted(cell.relations)],
            "representatives": [str(r) for r in cell.representatives]}


def label_to_json(label):
    return str(label)


def region_from_json(text, m=None, n=None):
    return RegionLabel.parse(text, m, n)


def face_from_json(text, m=None, n=None):
    return FaceLabel.parse(text, m, n)


def fiber_to_json(f):
    def name(k):
        return f"{k[0]}_{k[1]}"
    return {
        "m": f.m, "n": f.n,
        "baseRegion": str(f.base_region),
        "gauge": {name(k): rat_json(v) for k, v in f.gauge.items()},
        "apex": {name(k): rat_json(v) for k, v in f.apex.items()},
        "regions": [str(r) for r in f.regions],
        "positiveRegions": [str(r) for r in f.positive_regions],
        "quadrants": [{"region": str(q.region), "positiveRegion": str(q.positive_region),
                       "sizeClass": q.size_class,
                       "nwBlack": q.nw_black, "seBlack": q.se_black,
                       "free": [name(k) for k in q.free],
                       "lowerBounds": {name(k): rat_json(q.bounds[k]) for k in q.free},
                       "apexPoint": param_to_json(q.apex_point)}
                      for q in f.quadrants],
        "freeDOF": list(f.free_dof),
        "degenerate": f.degenerate,
    }


def load_payload(arg):
    """Inline JSON (starting with '{' or '[') or a path to a JSON file."""
    text = arg.strip()
    if text[:1] in "{[":
        return json.loads(text)
    with open(arg) as fh:
        return json.load(fh)


def dumps(obj):
    return json.dumps(obj, indent=2, sort_keys=False)
