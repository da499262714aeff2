"""The map g(a, A, b, B)_ij = min(a_i + b_j, A_i + B_j), its preimages and fibers."""

from dataclasses import dataclass, field
from fractions import Fraction

from .arrangement import (RegionLabel, XYPoint, negate_region, region_from_comparisons,
                          region_of_point)
from .diagram import diagram_of, cell_size_class, region_relations
from .ratcore import Matrix, rref


class NotInOpenImage(ValueError):
    pass


class NotGeneric(ValueError):
    pass


@dataclass(frozen=True)
class ParamPoint:
    a: tuple
    A: tuple
    b: tuple
    B: tuple

    def __post_init__(self):
        for name in ("a", "A", "b", "B"):
            object.__setattr__(self, name, tuple(Fraction(v) for v in getattr(self, name)))
        if len(self.a) != len(self.A) or len(self.b) != len(self.B):
            raise ValueError("a, A must have length m and b, B length n")
        if not self.a or not self.b:
            raise ValueError("need m, n >= 1")

    @property
    def m(self):
        return len(self.a)

    @property
    def n(self):
        return len(self.b)

    def xy(self):
        """Arrangement coordinates x_i = a_i - A_i, y_j = B_j - b_j."""
        return XYPoint(tuple(p - q for p, q in zip(self.a, self.A)),
                       tuple(p - q for p, q in zip(self.B, self.b)))

    def get(self, name, idx):
        return getattr(self, name)[idx - 1]

    def replace(self, values):
        """Copy with ``{(name, index): value}`` overrides (1-based)."""
        vecs = {k: list(getattr(self, k)) for k in ("a", "A", "b", "B")}
        for (name, idx), v in values.items():
            vecs[name][idx - 1] = Fraction(v)
        return ParamPoint(**vecs)


def eval_g(p):
    return Matrix(tuple(
        tuple(min(ai + bj, Ai + Bj) for bj, Bj in zip(p.b, p.B))
        for ai, Ai in zip(p.a, p.A)))


def delta(G, i1, i2, j1, j2):
    m, n = G.shape
    for i in (i1, i2):
        if not 1 <= i <= m:
            raise IndexError(f"row {i} out of range 1..{m}")
    for j in (j1, j2):
        if not 1 <= j <= n:
            raise IndexError(f"column {j} out of range 1..{n}")
    if i1 == i2 or j1 == j2:
        raise ValueError("delta needs two distinct rows and two distinct columns")
    g = G.rows
    return (g[i1 - 1][j1 - 1] + g[i2 - 1][j2 - 1]
            - g[i1 - 1][j2 - 1] - g[i2 - 1][j1 - 1])


def gauge_normalize(p, pin=(0, 0), row=None, col=None):
    """Shift (a, b) and (A, B) by opposite constants so A_row and b_col take
    the pinned values (defaults: A_m and b_n).  g is unchanged."""
    row = p.m if row is None else row
    col = p.n if col is None else col
    vA, vb = Fraction(pin[0]), Fraction(pin[1])
    sA = vA - p.A[row - 1]
    sb = vb - p.b[col - 1]
    return ParamPoint(tuple(v - sb for v in p.a), tuple(v + sA for v in p.A),
                      tuple(v + sb for v in p.b), tuple(v - sA for v in p.B))


def region_of_params(p):
    return region_of_point(p.xy())


def linearization(r):
    """Matrix of g restricted to region r: one row per entry (i, j), columns
    ordered a_1..a_m, A_1..A_m, b_1..b_n, B_1..B_n."""
    m, n = r.m, r.n
    out = []
    for i in range(1, m + 1):
        for j in range(1, n + 1):
            row = [0] * (2 * m + 2 * n)
            if r.precedes(i, j):
                row[i - 1] = 1
                row[2 * m + j - 1] = 1
            else:
                row[m + i - 1] = 1
                row[2 * m + n + j - 1] = 1
            out.append(row)
    return out


def linearization_rank(r):
    _, pivots = rref(linearization(r), 2 * (r.m + r.n))
    return len(pivots)


# -- border systems -----------------------------------------------------------

@dataclass
class BorderSystem:
    """Parameters fixed by the border entries of a diagram, plus the
    inequalities the remaining (free) parameters must satisfy."""

    determined: dict                     # (name, idx) -> value
    free: list                           # [(name, idx)] in a fixed order
    # each constraint: (free params involved, other determined params, g) meaning
    # sum(free) + sum(determined) > g   (>= in closed mode)
    constraints: list = field(default_factory=list)


def border_system(G, r, pins=(0, 0)):
    """Solve the black and white border trees of r's diagram.

    Gauge: A at the last diagram row and b at the last diagram column take
    the pinned values.  Returns None if G violates an equality that the
    border trees force (i.e. G is not even in the closed cell).
    """
    d = diagram_of(r)
    rows, cols, black = d.rows, d.cols, d.black
    g = G.rows
    R, C = len(rows), len(cols)
    val = {}
    pinA, pinb = Fraction(pins[0]), Fraction(pins[1])
    if black[R - 1][0]:
        last = rows[R - 1]
        val[("A", last)] = pinA
        for c in range(C):
            if black[R - 1][c]:
                val[("B", cols[c])] = g[last - 1][cols[c] - 1] - pinA
        for rr in range(R):
            if black[rr][0]:
                val[("A", rows[rr])] = g[rows[rr] - 1][cols[0] - 1] - val[("B", cols[0])]
    if not black[0][C - 1]:
        lastc = cols[C - 1]
        val[("b", lastc)] = pinb
        for rr in range(R):
            if not black[rr][C - 1]:
                val[("a", rows[rr])] = g[rows[rr] - 1][lastc - 1] - pinb
        for c in range(C):
            if not black[0][c]:
                val[("b", cols[c])] = g[rows[0] - 1][cols[c] - 1] - val[("a", rows[0])]

    free = []
    for i in rows:
        for name in ("a", "A"):
            if (name, i) not in val:
                free.append((name, i))
    for j in cols:
        for name in ("b", "B"):
            if (name, j) not in val:
                free.append((name, j))

    system = BorderSystem(val, free)
    for rr, i in enumerate(rows):
        for c, j in enumerate(cols):
            gij = g[i - 1][j - 1]
            win, lose = (("A", "B"), ("a", "b")) if black[rr][c] else (("a", "b"), ("A", "B"))
            if val[(win[0], i)] + val[(win[1], j)] != gij:
                return None
            keys = [(lose[0], i), (lose[1], j)]
            system.constraints.append((
                [k for k in keys if k not in val],
                [k for k in keys if k in val],
                gij))
    return system


def _loose_entries(system, closed):
    """Constraints among determined parameters that fail."""
    bad = []
    for fr, det, gij in system.constraints:
        if fr:
            continue
        s = sum(system.determined[k] for k in det)
        if (s < gij) if closed else (s <= gij):
            bad.append((det, gij))
    return bad


def free_lower_bounds(system):
    """Tightest lower bound of each free parameter from constraints whose other
    parameter is determined (None when no such constraint exists)."""
    bounds = {k: None for k in system.free}
    for fr, det, gij in system.constraints:
        if len(fr) == 1:
            b = gij - sum(system.determined[k] for k in det)
            cur = bounds[fr[0]]
            bounds[fr[0]] = b if cur is None else max(cur, b)
    return bounds


def _assemble(G, system):
    bounds = free_lower_bounds(system)
    val = dict(system.determined)
    for k in system.free:
        if bounds[k] is not None:
            val[k] = bounds[k] + 1
    pair_constraints = [(fr, gij) for fr, det, gij in system.constraints if len(fr) == 2]
    for k in system.free:
        if k not in val:
            gs = [gij for fr, gij in pair_constraints if k in fr]
            val[k] = Fraction(int(max(gs) // 2) + 1) if gs else Fraction(0)
    # raising a free parameter only ever helps, so one pass settles every pair
    for (u, v), gij in pair_constraints:
        if val[u] + val[v] <= gij:
            val[v] = gij - val[u] + 1
    m, n = G.shape
    vec = {name: [Fraction(0)] * (m if name in "aA" else n) for name in ("a", "A", "b", "B")}
    for (name, idx), v in val.items():
        vec[name][idx - 1] = v
    return ParamPoint(**vec)


def _construct(G, r, closed, pins=(0, 0)):
    if G.shape != (r.m, r.n):
        raise ValueError(f"matrix shape {G.shape} does not match region of A_{{{r.m},{r.n}}}")
    system = border_system(G, r, pins)
    if system is None or _loose_entries(system, closed):
        return None
    p = _assemble(G, system)
    if eval_g(p) != G:  # pragma: no cover - guaranteed by the border argument
        raise AssertionError(f"border construction failed to reproduce G in region {r}")
    return p


def preimage_in_region(G, r, pins=(0, 0)):
    """A parameter point inside region r mapping exactly to G.

    Border entries of the diagram fix most parameters; every free parameter
    is set one above the tightest bound it must beat.
    """
    rels = region_relations(r)
    if not all(rel.holds(G) for rel in rels):
        raise NotInOpenImage(f"matrix is not in the open image of region {r}")
    p = _construct(G, r, closed=False, pins=pins)
    if p is None or region_of_params(p) != r:  # pragma: no cover
        raise AssertionError(f"preimage construction left region {r}")
    return p


def closed_preimage(G, r, pins=(0, 0)):
    """Preimage in the closure of region r, or None if G is outside that cell."""
    if not all(rel.holds(G, closed=True) for rel in region_relations(r)):
        return None
    return _construct(G, r, closed=True, pins=pins)


# -- sampling -------------------------------------------------------------------

def random_rational(rng, span=20, den=7):
    return Fraction(rng.randint(-span * den, span * den), rng.randint(1, den))


def random_param_point(m, n, rng, span=20, den=7):
    def vec(k):
        return tuple(random_rational(rng, span, den) for _ in range(k))
    return ParamPoint(vec(m), vec(m), vec(n), vec(n))


def lift(r, rng, span=20, den=7):
    """Random parameter point strictly inside region r.

    Blocks of the label occupy consecutive disjoint intervals; letters of one
    block are placed independently inside its interval, so their relative
    order is random, as the region allows.
    """
    lo = Fraction(rng.randint(-span, span))
    coord = {}
    for block in r.blocks():
        width = Fraction(rng.randint(1, 4 * den), den)
        for L in block:
            coord[L] = lo + width * Fraction(rng.randint(1, 999), 1000)
        lo += width
    A = tuple(random_rational(rng, span, den) for _ in range(r.m))
    b = tuple(random_rational(rng, span, den) for _ in range(r.n))
    a = tuple(coord[(1, i + 1)] + A[i] for i in range(r.m))
    B = tuple(coord[(-1, j + 1)] + b[j] for j in range(r.n))
    return ParamPoint(a, A, b, B)


# -- fibers -------------------------------------------------------------------------

@dataclass
class Quadrant:
    region: RegionLabel        # the corner-flip region holding this quadrant
    positive_region: RegionLabel   # region or its negation, whichever is positive
    size_class: str
    nw_black: bool
    se_black: bool
    free: list                 # [(name, idx), (name, idx)]
    bounds: dict               # (name, idx) -> strict lower bound
    apex_point: ParamPoint     # free parameters at their bounds

    def point(self, offsets):
        """Parameter point with each free parameter at bound + offset (offset > 0)."""
        return self.apex_point.replace(
            {k: self.bounds[k] + Fraction(off) for k, off in zip(self.free, offsets)})


@dataclass
class FiberDescription:
    m: int
    n: int
    base_region: RegionLabel
    gauge: dict                # pinned (name, idx) -> value
    apex: dict                 # (name, idx) -> value for the four corner parameters
    quadrants: list
    free_dof: tuple            # descriptions of the two gauge shifts
    degenerate: bool

    @property
    def regions(self):
        """The four corner-flip regions.  A flip of the entry (1, 1) yields a
        region with 1' before 1; positive_regions lists its negation instead."""
        return [q.region for q in self.quadrants]

    @property
    def positive_regions(self):
        return [q.positive_region for q in self.quadrants]


def _flip_region(d, nw_black, se_black):
    m, n = d.m, d.n
    black = {(i, j): d.black[r][c] for r, i in enumerate(d.rows) for c, j in enumerate(d.cols)}
    black[(d.rows[0], d.cols[0])] = nw_black
    black[(d.rows[-1], d.cols[-1])] = se_black
    letters = region_from_comparisons(range(1, m + 1), range(1, n + 1),
                                      lambda i, j: not black[(i, j)])
    return RegionLabel(m, n, letters)


def generic_fiber(G, pins=(0, 0)):
    """Fiber of a matrix interior to a unique small cell.

    Works in diagram coordinates of the small cell's positive representative:
    the four regions are its diagram with the north-west and south-east
    entries recoloured; each contributes a 2-dimensional quadrant.
    """
    from .cells import small_cells_containing

    m, n = G.shape
    if m < 2 or n < 2:
        raise NotGeneric("fibers need m, n >= 2")
    cells = small_cells_containing(G)
    if len(cells) != 1:
        raise NotGeneric(f"matrix lies in the interior of {len(cells)} small cells, need exactly 1")
    cell = cells[0]
    base = min(rep for rep in cell.representatives if rep.is_positive())
    d = diagram_of(base)
    r1, rm, c1, cn = d.rows[0], d.rows[-1], d.cols[0], d.cols[-1]
    g = G.rows
    pinA, pinb = Fraction(pins[0]), Fraction(pins[1])
    gauge = {("A", rm): pinA, ("b", cn): pinb}
    apex = {
        ("a", rm): g[rm - 1][cn - 1] - pinb,
        ("b", c1): g[r1 - 1][c1 - 1] - g[r1 - 1][cn - 1] + pinb,
        ("B", cn): g[rm - 1][cn - 1] - pinA,
        ("A", r1): g[r1 - 1][c1 - 1] - g[rm - 1][c1 - 1] + pinA,
    }
    quadrants = []
    for nw_black, se_black in ((False, False), (True, False), (False, True), (True, True)):
        region = _flip_region(d, nw_black, se_black)
        system = border_system(G, region, pins)
        if system is None or _loose_entries(system, closed=True):  # pragma: no cover
            raise AssertionError(f"corner flip {region} does not reach G")
        bounds = free_lower_bounds(system)
        if len(system.free) != 2 or any(b is None for b in bounds.values()):
            raise NotGeneric(f"region {region} does not give a two-parameter quadrant")
        vals = dict(system.determined)
        vals.update(bounds)
        vec = {name: [Fraction(0)] * (m if name in "aA" else n) for name in ("a", "A", "b", "B")}
        for (name, idx), v in vals.items():
            vec[name][idx - 1] = v
        apex_point = ParamPoint(**vec)
        if eval_g(apex_point) != G:
            raise NotGeneric(f"apex of region {region} does not map to G")
        positive = region if region.is_positive() else negate_region(region)
        quadrants.append(Quadrant(region, positive, cell_size_class(region), nw_black, se_black,
                                  list(system.free), bounds, apex_point))
    free_dof = ("a_i += c, b_j -= c for all i, j", "A_i += c, B_j -= c for all i, j")
    return FiberDescription(m, n, base, gauge, apex, quadrants, free_dof,
                            degenerate=(m < 3 or n < 3))
