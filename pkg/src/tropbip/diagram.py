"""Black/white diagrams of regions and the rectangle relations of their images.

Entry (i, j) is white when x_i < y_j in the region (g_ij = a_i + b_j) and
black otherwise (g_ij = A_i + B_j).  Rows and columns are listed in the
order their letters occur in the region label, which makes the black
entries a staircase hugging the south-west corner.
"""

from dataclasses import dataclass
from itertools import combinations

from .arrangement import NEG, POS, block_stats

WHITE, BLACK = "W", "B"


@dataclass(frozen=True)
class Diagram:
    m: int
    n: int
    rows: tuple          # positive indices in label order
    cols: tuple          # negative indices in label order
    black: tuple         # black[r][c] for diagram positions
    path: str            # 'S' per positive letter, 'E' per negative letter

    def color(self, r, c):
        return BLACK if self.black[r][c] else WHITE

    def render(self):
        width = max(len(str(v)) for v in self.rows + self.cols) + 1
        head = " " * width + " " + " ".join(f"{c}'".rjust(width) for c in self.cols)
        lines = [head]
        for r, i in enumerate(self.rows):
            cells = " ".join(self.color(r, c).rjust(width) for c in range(len(self.cols)))
            lines.append(str(i).rjust(width) + " " + cells)
        lines.append(f"path: {self.path}")
        return "\n".join(lines)


@dataclass(frozen=True)
class Rect:
    """Box spanned by two rows and two columns, given by matrix indices."""

    row_a: int
    row_b: int
    col_a: int
    col_b: int


@dataclass(frozen=True, order=True)
class RectRelation:
    """Delta_{i1 i2 j1 j2} == 0 (EQ) or > 0 (GT), 1-based matrix indices.

    Delta(g) = g[i1,j1] + g[i2,j2] - g[i1,j2] - g[i2,j1].
    """

    i1: int
    i2: int
    j1: int
    j2: int
    kind: str

    def __post_init__(self):
        if self.kind not in ("EQ", "GT"):
            raise ValueError(f"relation kind must be EQ or GT, not {self.kind!r}")
        if self.i1 == self.i2 or self.j1 == self.j2:
            raise ValueError("rectangle relation needs two distinct rows and columns")

    def coefficients(self, m, n):
        v = [0] * (m * n)
        v[(self.i1 - 1) * n + self.j1 - 1] += 1
        v[(self.i2 - 1) * n + self.j2 - 1] += 1
        v[(self.i1 - 1) * n + self.j2 - 1] -= 1
        v[(self.i2 - 1) * n + self.j1 - 1] -= 1
        return tuple(v)

    def value(self, G):
        rows = G.rows
        a, b, c, d = self.i1 - 1, self.i2 - 1, self.j1 - 1, self.j2 - 1
        return rows[a][c] + rows[b][d] - rows[a][d] - rows[b][c]

    def holds(self, G, closed=False):
        v = self.value(G)
        if self.kind == "EQ":
            return v == 0
        return v >= 0 if closed else v > 0

    def __str__(self):
        op = "=" if self.kind == "EQ" else ">"
        return f"D[{self.i1},{self.i2};{self.j1},{self.j2}] {op} 0"


def diagram_of(r):
    rows = r.row_order()
    cols = r.col_order()
    black = tuple(tuple(not r.precedes(i, j) for j in cols) for i in rows)
    path = "".join("S" if L.sign == POS else "E" for L in r.letters)
    return Diagram(r.m, r.n, rows, cols, black, path)


def _box(d, p, q, s, t):
    return [[d.black[r][c] for c in range(s, t + 1)] for r in range(p, q + 1)]


def _classify_grid(grid):
    values = {v for row in grid for v in row}
    if len(values) == 1:
        return "monochromatic"
    # one horizontal cut: every row one colour, colour changes once going down
    row_cols = [set(row) for row in grid]
    if all(len(c) == 1 for c in row_cols):
        seq = [c.pop() for c in row_cols]
        if sum(a != b for a, b in zip(seq, seq[1:])) == 1:
            return "sliced"
    cols = list(zip(*grid))
    col_cols = [set(c) for c in cols]
    if all(len(c) == 1 for c in col_cols):
        seq = [c.pop() for c in col_cols]
        if sum(a != b for a, b in zip(seq, seq[1:])) == 1:
            return "sliced"
    return "jagged"


def classify_rect(d, box):
    """Monochromatic / sliced / jagged, reading every entry of the box."""
    p, q = d.rows.index(box.row_a), d.rows.index(box.row_b)
    s, t = d.cols.index(box.col_a), d.cols.index(box.col_b)
    if p > q or s > t or p == q or s == t:
        raise ValueError("box corners must be distinct and listed in diagram order")
    return _classify_grid(_box(d, p, q, s, t))


def relations_v2(d):
    """Relations read off the diagram: monochromatic box -> EQ, jagged -> GT."""
    out = set()
    for p, q in combinations(range(len(d.rows)), 2):
        for s, t in combinations(range(len(d.cols)), 2):
            kind = _classify_grid(_box(d, p, q, s, t))
            if kind == "sliced":
                continue
            out.add(RectRelation(d.rows[p], d.rows[q], d.cols[s], d.cols[t],
                                 "EQ" if kind == "monochromatic" else "GT"))
    return out


def relations_v1(r):
    """Relations from the interleaving pattern of four letters in the label."""
    at = r.position
    rows = r.row_order()
    cols = r.col_order()
    out = set()
    for i1, i2 in combinations(rows, 2):          # i1 precedes i2
        for j1, j2 in combinations(cols, 2):      # j1 precedes j2
            I1, I2 = at[(POS, i1)], at[(POS, i2)]
            J1, J2 = at[(NEG, j1)], at[(NEG, j2)]
            if max(I1, I2) < min(J1, J2) or max(J1, J2) < min(I1, I2):
                kind = "EQ"
            elif I1 < J1 < I2 < J2 or J1 < I1 < J2 < I2:
                kind = "GT"
            elif I1 < J1 < J2 < I2 and any(J1 < at[(POS, i)] < J2 for i in rows):
                kind = "GT"
            elif J1 < I1 < I2 < J2 and any(I1 < at[(NEG, j)] < I2 for j in cols):
                kind = "GT"
            else:
                continue
            out.add(RectRelation(i1, i2, j1, j2, kind))
    return out


def span_equalities(d):
    """EQ relations for corner quadruples of one colour (inner entries ignored)."""
    out = set()
    for p, q in combinations(range(len(d.rows)), 2):
        for s, t in combinations(range(len(d.cols)), 2):
            corners = {d.black[p][s], d.black[p][t], d.black[q][s], d.black[q][t]}
            if len(corners) == 1:
                out.add(RectRelation(d.rows[p], d.rows[q], d.cols[s], d.cols[t], "EQ"))
    return out


def is_extreme_region(r):
    """R1 (all x below all y) or R2 (all x above all y)."""
    return len(r.blocks()) <= 2


def image_dimension(r):
    if r.m == 0 or r.n == 0:
        raise ValueError("image dimension needs m, n >= 1")
    if is_extreme_region(r):
        return r.m + r.n - 1
    st = block_stats(r)
    return 2 * r.m + 2 * r.n - 2 - st.first - st.last


def cell_size_class(r):
    """notMaximal / small / medium / large.

    The small/medium/large split presupposes m, n >= 2; smaller shapes are
    reported as notMaximal.
    """
    if r.m < 2 or r.n < 2:
        return "notMaximal"
    blocks = r.blocks()
    if len(blocks[0]) != 1 or len(blocks[-1]) != 1:
        return "notMaximal"
    second, penult = len(blocks[1]), len(blocks[-2])
    if len(blocks) == 3:
        return "large" if second > 1 else "small"
    if second == 1 and penult == 1:
        return "small"
    if second > 1 and penult > 1:
        return "large"
    return "medium"


def relation_forms(relations, m, n):
    """Split relations into (equality forms, positive forms) over the m*n entries."""
    eqs = [rel.coefficients(m, n) for rel in sorted(relations) if rel.kind == "EQ"]
    gts = [rel.coefficients(m, n) for rel in sorted(relations) if rel.kind == "GT"]
    return eqs, gts


def region_relations(r):
    """Relations of g(R) (diagram reading), cached on the label."""
    cached = r.__dict__.get("_relations")
    if cached is None:
        cached = frozenset(relations_v2(diagram_of(r)))
        object.__setattr__(r, "_relations", cached)
    return cached


def entry_index(i, j, n):
    return (i - 1) * n + (j - 1)


def delta_of(G, i1, i2, j1, j2):
    rows = G.rows
    return (rows[i1 - 1][j1 - 1] + rows[i2 - 1][j2 - 1]
            - rows[i1 - 1][j2 - 1] - rows[i2 - 1][j1 - 1])

