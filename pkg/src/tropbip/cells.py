"""Image cells of regions: membership, identity, subdivisions, rank-2 decision."""

import os
import random
import warnings
from dataclasses import dataclass, field
from functools import lru_cache
from fractions import Fraction
from itertools import combinations

import numpy as np

from .arrangement import (NotAcyclic, RegionLabel, enumerate_regions,
                          region_from_comparisons)
from .diagram import (cell_size_class, diagram_of, region_relations,
                      span_equalities)
from .morphism import closed_preimage, eval_g, random_param_point
from .ratcore import LinSystem, lp_feasible, lp_maximize, rref

DEFAULT_BUDGET = 10 ** 7


class NoRegionFound(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    pass


def region_count(m, n):
    """Acyclic orientations of K_{m,n}: sum_k (k!)^2 S(m+1,k+1) S(n+1,k+1)."""
    from .counts import region_count as rc
    return rc(m, n)


def budget():
    raw = os.environ.get("TROPBIP_BUDGET")
    if raw is None:
        return DEFAULT_BUDGET
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"TROPBIP_BUDGET must be an integer, got {raw!r}") from None


def check_budget(m, n):
    r = region_count(m, n)
    if r > budget():
        raise BudgetExceeded(f"A_{{{m},{n}}} has {r} regions, budget is {budget()}")
    return r


def _check_shape(G, m, n):
    if G.shape != (m, n):
        raise ValueError(f"matrix has shape {G.shape}, expected {(m, n)}")


# -- relation systems --------------------------------------------------------------

def relation_system(relations, m, n, closed=False):
    """LinSystem over the m*n entries (row-major) of an open or closed cell."""
    eqs, gts = [], []
    for rel in sorted(relations):
        row = (rel.coefficients(m, n), 0)
        (eqs if rel.kind == "EQ" else gts).append(row)
    if closed:
        return LinSystem(m * n, tuple(eqs), (), tuple(gts))
    return LinSystem(m * n, tuple(eqs), tuple(gts), ())


def member(G, r, mode="open"):
    if mode not in ("open", "closed"):
        raise ValueError(f"mode must be open or closed, not {mode!r}")
    _check_shape(G, r.m, r.n)
    closed = mode == "closed"
    return all(rel.holds(G, closed) for rel in region_relations(r))


def _split(relations, m, n):
    eqs = [rel.coefficients(m, n) for rel in sorted(relations) if rel.kind == "EQ"]
    gts = [rel.coefficients(m, n) for rel in sorted(relations) if rel.kind == "GT"]
    return eqs, gts


def _span_key(eqs, nvars):
    red, _ = rref(eqs, nvars) if eqs else ([], [])
    return tuple(tuple(row) for row in red)


def _reduce(vec, span_rows):
    """Reduce a form modulo the span (rows in reduced echelon form) and scale
    so the first nonzero coefficient is +-1."""
    v = list(Fraction(c) for c in vec)
    for row in span_rows:
        p = next(k for k, c in enumerate(row) if c)
        if v[p]:
            f = v[p]
            v = [a - f * b for a, b in zip(v, row)]
    lead = next((c for c in v if c), None)
    if lead is None:
        return tuple(v)
    s = abs(lead)
    return tuple(c / s for c in v)


def implies_closed(sys_a, sys_b):
    """Does the closed system sys_a imply every row of sys_b (closed)?"""
    for coefs, const in sys_b.equalities:
        neg = tuple(-c for c in coefs)
        if lp_feasible(sys_a.with_rows(strict=[(coefs, const)])):
            return False
        if lp_feasible(sys_a.with_rows(strict=[(neg, -const)])):
            return False
    for coefs, const in sys_b.weak + sys_b.strict:
        neg = tuple(-c for c in coefs)
        if lp_feasible(sys_a.with_rows(strict=[(neg, -const)])):
            return False
    return True


# -- cells -----------------------------------------------------------------------------

@dataclass
class Cell:
    m: int
    n: int
    relations: frozenset
    representatives: tuple
    size_class: str
    span: tuple = field(default=(), repr=False)
    interior_point: tuple = field(default=None, repr=False)

    @property
    def key(self):
        return str(self.representatives[0])

    def __eq__(self, other):
        return isinstance(other, Cell) and (self.m, self.n, self.key) == (other.m, other.n, other.key)

    def __hash__(self):
        return hash((self.m, self.n, self.key))

    def open_system(self):
        return relation_system(self.relations, self.m, self.n)

    def closed_system(self):
        return relation_system(self.relations, self.m, self.n, closed=True)

    def contains(self, G, closed=True):
        return all(rel.holds(G, closed) for rel in self.relations)

    def is_full_space(self):
        return not self.relations

    def positive_representatives(self):
        return [r for r in self.representatives if r.is_positive()]


def is_maximal(r):
    return cell_size_class(r) != "notMaximal"


@dataclass
class _Group:
    regions: list
    relations: frozenset
    span: tuple
    witness: tuple
    system: LinSystem


def _same_polyhedron(g1, g2, m, n):
    # interiors of equal cells coincide, so each witness must be interior to the other
    if not (_holds_vec(g2.relations, g1.witness, n) and _holds_vec(g1.relations, g2.witness, n)):
        return False
    return implies_closed(g1.system, g2.system) and implies_closed(g2.system, g1.system)


def _holds_vec(relations, vec, n):
    for rel in relations:
        a, b = (rel.i1 - 1) * n, (rel.i2 - 1) * n
        v = vec[a + rel.j1 - 1] + vec[b + rel.j2 - 1] - vec[a + rel.j2 - 1] - vec[b + rel.j1 - 1]
        if (v != 0) if rel.kind == "EQ" else (v <= 0):
            return False
    return True


@dataclass
class Catalogue:
    m: int
    n: int
    cells: list
    by_region: dict          # str(label) -> Cell

    def of_class(self, which):
        return [c for c in self.cells if c.size_class == which]


@lru_cache(maxsize=None)
def catalogue(m, n):
    """All maximum-dimensional cells of B_{m,n}, identified by polyhedron equality."""
    check_budget(m, n)
    nv = m * n
    syntactic = {}
    for r in enumerate_regions(m, n):
        if not is_maximal(r):
            continue
        rels = region_relations(r)
        eqs, gts = _split(rels, m, n)
        span = _span_key(eqs, nv)
        ineqs = frozenset(_reduce(g, span) for g in gts)
        syntactic.setdefault((span, ineqs), []).append(r)

    by_span = {}
    for (span, _), regions in sorted(syntactic.items(), key=lambda kv: min(kv[1])):
        rep = min(regions)
        rels = region_relations(rep)
        system = relation_system(rels, m, n, closed=True)
        wit = lp_feasible(relation_system(rels, m, n))
        if not wit:  # pragma: no cover - every region has a nonempty image
            raise AssertionError(f"image of region {rep} is empty")
        group = _Group(list(regions), rels, span, wit.witness, system)
        bucket = by_span.setdefault(span, [])
        for other in bucket:
            if _same_polyhedron(other, group, m, n):
                other.regions.extend(regions)
                break
        else:
            bucket.append(group)

    cells, by_region = [], {}
    for bucket in by_span.values():
        for g in bucket:
            reps = tuple(sorted(g.regions))
            canon = reps[0]
            classes = {cell_size_class(r) for r in reps}
            if len(classes) != 1:  # pragma: no cover - would contradict the size classification
                raise AssertionError(f"cell of {canon} mixes size classes {sorted(classes)}")
            cell = Cell(m, n, region_relations(canon), reps, classes.pop(), g.span, g.witness)
            cells.append(cell)
            for r in reps:
                by_region[str(r)] = cell
    cells.sort(key=lambda c: c.representatives[0])
    return Catalogue(m, n, cells, by_region)


def canonical_cell(r):
    if not is_maximal(r):
        return Cell(r.m, r.n, region_relations(r), (r,), "notMaximal")
    return catalogue(r.m, r.n).by_region[str(r)]


@dataclass
class Location:
    interior_of: Cell
    closed_containers: list


def locate_cells(G):
    m, n = G.shape
    cat = catalogue(m, n)
    containers = [c for c in cat.cells if c.contains(G, closed=True)]
    interior = [c for c in containers if c.size_class == "small" and c.contains(G, closed=False)]
    return Location(interior[0] if len(interior) == 1 else None, containers)


def small_cells_containing(G):
    """Small cells whose open description G satisfies."""
    m, n = G.shape
    return [c for c in catalogue(m, n).of_class("small") if c.contains(G, closed=False)]


# -- refinement: parents and children ------------------------------------------------------

def _swap(letters, a, b):
    letters = list(letters)
    letters[a], letters[b] = letters[b], letters[a]
    return letters


def large_parent(r):
    """Adjust the ends of a small or medium label until both the second and
    second-to-last blocks have more than one letter."""
    cls = cell_size_class(r)
    if cls == "large":
        warnings.warn(f"region {r} is already large", stacklevel=2)
        return r
    if cls not in ("small", "medium"):
        raise ValueError(f"region {r} is not maximum-dimensional")
    out = r
    if len(out.blocks()[1]) == 1:
        out = RegionLabel.from_letters(r.m, r.n, _swap(out.letters, 0, 1))
    if len(out.blocks()[-2]) == 1:
        k = len(out.letters)
        out = RegionLabel.from_letters(r.m, r.n, _swap(out.letters, k - 1, k - 2))
    return out


def small_children(r):
    """Small regions subdividing a large region: move one letter of the second
    block to the front (and, with four or more blocks, one letter of the
    second-to-last block to the end)."""
    if cell_size_class(r) != "large":
        raise ValueError(f"region {r} is not large")
    blocks = [list(b) for b in r.blocks()]
    u, first, rest = blocks[0], blocks[1], blocks[2:]
    fronts = [[w] + u + [x for x in first if x != w] for w in first]
    if len(blocks) == 3:
        # the middle block is both the second and second-to-last block
        return [RegionLabel.from_letters(r.m, r.n, f + rest[0]) for f in fronts]
    middle = sum(blocks[2:-2], [])
    last, v = blocks[-2], blocks[-1]
    backs = [[x for x in last if x != z] + v + [z] for z in last]
    return [RegionLabel.from_letters(r.m, r.n, f + middle + b) for f in fronts for b in backs]


# -- recovering a large region from its linear span ---------------------------------------

def entry_classes(eqs, m, n):
    """Classes of entries under the transitive closure of sharing a rectangle
    equality; entries in no equality form singleton classes."""
    parent = {(i, j): (i, j) for i in range(1, m + 1) for j in range(1, n + 1)}

    def find(e):
        while parent[e] != e:
            parent[e] = parent[parent[e]]
            e = parent[e]
        return e

    for rel in eqs:
        corners = [(rel.i1, rel.j1), (rel.i1, rel.j2), (rel.i2, rel.j1), (rel.i2, rel.j2)]
        root = find(corners[0])
        for c in corners[1:]:
            parent[find(c)] = root
            root = find(root)
    classes = {}
    for e in parent:
        classes.setdefault(find(e), []).append(e)
    return sorted(sorted(c) for c in classes.values())


def _normal_eqs(eqs):
    out = set()
    for rel in eqs:
        if rel.kind != "EQ":
            raise ValueError(f"{rel} is not an equality")
        i1, i2 = sorted((rel.i1, rel.i2))
        j1, j2 = sorted((rel.j1, rel.j2))
        out.add((i1, i2, j1, j2))
    return out


def recover_region_from_span(eqs, m, n, max_classes=22):
    """Large regions whose span equalities are exactly ``eqs``.

    Entries linked by shared equalities are monochromatic, so a diagram is a
    choice of colour per class.  Each colouring is turned back into a label
    and kept when it is large and reproduces the given equalities.
    """
    eqs = list(eqs)
    target = _normal_eqs(eqs)
    classes = entry_classes(eqs, m, n)
    if len(classes) > max_classes:
        raise BudgetExceeded(f"{len(classes)} entry classes exceed the search limit {max_classes}")
    colour_of = {}
    found = set()
    for mask in range(1 << len(classes)):
        for k, cls in enumerate(classes):
            bit = bool(mask >> k & 1)
            for e in cls:
                colour_of[e] = bit
        try:
            letters = region_from_comparisons(range(1, m + 1), range(1, n + 1),
                                              lambda i, j: not colour_of[(i, j)])
        except NotAcyclic:
            continue
        r = RegionLabel(m, n, letters)
        if cell_size_class(r) != "large":
            continue
        if _normal_eqs(span_equalities(diagram_of(r))) == target:
            found.add(r)
    if not found:
        raise NoRegionFound("no large region has this span")
    return sorted(found)


# -- deciding Barvinok rank <= 2 -------------------------------------------------------------

@dataclass
class Decision:
    yes: bool
    region: RegionLabel = None
    preimage: object = None

    def __bool__(self):
        return self.yes


@lru_cache(maxsize=None)
def _decide_table(m, n):
    """Regions (fewest equalities first) with boolean masks over the corner
    quadruples i1<i2, j1<j2: where Delta must vanish, be >= 0, or be <= 0."""
    quads = [(i1, i2, j1, j2) for i1, i2 in combinations(range(1, m + 1), 2)
             for j1, j2 in combinations(range(1, n + 1), 2)]
    col = {q: k for k, q in enumerate(quads)}
    regions = sorted(enumerate_regions(m, n),
                     key=lambda r: (sum(rel.kind == "EQ" for rel in region_relations(r)), r))
    shape = (len(regions), len(quads))
    eq, nonneg, nonpos = np.zeros(shape, bool), np.zeros(shape, bool), np.zeros(shape, bool)
    for k, r in enumerate(regions):
        for rel in region_relations(r):
            c = col[(min(rel.i1, rel.i2), max(rel.i1, rel.i2),
                     min(rel.j1, rel.j2), max(rel.j1, rel.j2))]
            if rel.kind == "EQ":
                eq[k, c] = True
            elif (rel.i1 < rel.i2) == (rel.j1 < rel.j2):
                nonneg[k, c] = True
            else:
                nonpos[k, c] = True
    return regions, quads, eq, nonneg, nonpos


def barvinok2_decide(G):
    """Yes with a region and an exact preimage, or No after every region's
    closed cell has been tried."""
    m, n = G.shape
    check_budget(m, n)
    regions, quads, eq, nonneg, nonpos = _decide_table(m, n)
    if quads:
        g = G.rows
        signs = np.array([(lambda d: (d > 0) - (d < 0))(
            g[i1 - 1][j1 - 1] + g[i2 - 1][j2 - 1] - g[i1 - 1][j2 - 1] - g[i2 - 1][j1 - 1])
            for i1, i2, j1, j2 in quads], dtype=np.int8)
        bad = (eq & (signs != 0)) | (nonneg & (signs < 0)) | (nonpos & (signs > 0))
        candidates = np.flatnonzero(~bad.any(axis=1))
    else:
        candidates = range(len(regions))
    for k in candidates:
        r = regions[k]
        pre = closed_preimage(G, r)
        if pre is not None and eval_g(pre) == G:
            return Decision(True, r, pre)
    return Decision(False)


# -- subdivision harness ---------------------------------------------------------------------

def _syntactically_disjoint(c1, c2, m, n):
    """One cell demands a form > 0 where the other demands it < 0 or = 0."""
    f1 = {rel.coefficients(m, n): rel.kind for rel in c1.relations}
    for rel in c2.relations:
        v = rel.coefficients(m, n)
        neg = tuple(-x for x in v)
        kinds = {f1.get(v), f1.get(neg)} - {None}
        if rel.kind == "GT" and (f1.get(neg) == "GT" or "EQ" in kinds):
            return True
        if rel.kind == "EQ" and "GT" in kinds:
            return True
    return False


def _interiors_disjoint(cells, m, n):
    bad = []
    for c1, c2 in combinations(cells, 2):
        if _syntactically_disjoint(c1, c2, m, n):
            continue
        if lp_feasible(c1.open_system() & c2.open_system()):
            bad.append((c1.key, c2.key))
    return bad


def _implicit_equalities(system):
    """Rows of a closed system that vanish on all of it."""
    nv = system.nvars
    forms = [c for c, _ in system.weak]
    k = len(forms)
    weak = []
    for idx, coefs in enumerate(forms):
        row = list(coefs) + [0] * k
        row[nv + idx] = -1
        weak.append((tuple(row), 0))                      # form >= tau
    for idx in range(k):
        lo = [0] * (nv + k)
        lo[nv + idx] = 1
        hi = [0] * (nv + k)
        hi[nv + idx] = -1
        weak += [(tuple(lo), 0), (tuple(hi), -1)]         # 0 <= tau <= 1
    eqs = tuple((tuple(c) + (0,) * k, 0) for c, _ in system.equalities)
    status, _, point = lp_maximize(LinSystem(nv + k, eqs, (), tuple(weak)),
                                   [0] * nv + [1] * k)
    if status != "optimal":  # pragma: no cover - the system is bounded and contains 0
        raise AssertionError(f"relative interior search ended {status}")
    return [forms[idx] for idx in range(k) if point[nv + idx] == 0]


def _face_to_face(c1, c2):
    joint = c1.closed_system() & c2.closed_system()
    hull = [(f, 0) for f in _implicit_equalities(joint)]
    for a, b in ((c1, c2), (c2, c1)):
        restricted = a.closed_system().with_rows(equalities=hull + list(joint.equalities))
        if not implies_closed(restricted, b.closed_system()):
            return False
    return True


def verify_subdivision(m, n, samples=500, seed=0, pairs=60):
    """Exact checks that large cells subdivide B_{m,n} and small cells refine them."""
    rng = random.Random(seed)
    cat = catalogue(m, n)
    small, large = cat.of_class("small"), cat.of_class("large")
    checks = []

    spans = {}
    dup = []
    for c in large:
        if c.span in spans:
            dup.append((spans[c.span], c.key))
        spans[c.span] = c.key
    checks.append({"name": "large spans distinct", "passed": not dup,
                   "detail": f"{len(large)} large cells", "counterexamples": dup})

    bad_small = _interiors_disjoint(small, m, n)
    bad_large = _interiors_disjoint(large, m, n)
    checks.append({"name": "interiors disjoint", "passed": not bad_small and not bad_large,
                   "detail": f"{len(small)} small cells, {len(large)} large cells",
                   "counterexamples": bad_small + bad_large})

    uncovered = []
    for _ in range(samples):
        G = eval_g(random_param_point(m, n, rng))
        if not any(c.contains(G) for c in small) or not any(c.contains(G) for c in large):
            uncovered.append([[str(v) for v in row] for row in G.rows])
    checks.append({"name": "sampled coverage", "passed": not uncovered,
                   "detail": f"{samples} image points", "counterexamples": uncovered[:5]})

    unrefined = []
    for c in small:
        guess = canonical_cell(large_parent(c.representatives[0]))
        order = [guess] + [x for x in large if x is not guess]
        if not any(implies_closed(c.closed_system(), p.closed_system()) for p in order):
            unrefined.append(c.key)
    checks.append({"name": "small refines large", "passed": not unrefined,
                   "detail": f"{len(small)} small cells", "counterexamples": unrefined})

    bad_faces = []
    tested = 0
    for cells in (small, large):
        all_pairs = list(combinations(cells, 2))
        chosen = all_pairs if len(all_pairs) <= pairs else rng.sample(all_pairs, pairs)
        for c1, c2 in chosen:
            tested += 1
            if not _face_to_face(c1, c2):
                bad_faces.append((c1.key, c2.key))
    checks.append({"name": "face-to-face", "passed": not bad_faces,
                   "detail": f"{tested} cell pairs", "counterexamples": bad_faces})

    return {"m": m, "n": n, "samples": samples, "seed": seed,
            "small_cells": len(small), "large_cells": len(large),
            "passed": all(c["passed"] for c in checks), "checks": checks}


def count_cells(m, n, which):
    if which not in ("small", "large"):
        raise ValueError(f"which must be small or large, not {which!r}")
    if m < 2 or n < 2:
        return {"distinctImages": 0, "positiveRegions": 0}
    cat = catalogue(m, n)
    cells = cat.of_class(which)
    positive = sum(1 for c in cells for r in c.representatives if r.is_positive())
    return {"distinctImages": len(cells), "positiveRegions": positive}
