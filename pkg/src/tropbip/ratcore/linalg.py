from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class Matrix:
    """Dense m x n matrix of Fractions (rows are tuples)."""

    rows: tuple

    def __post_init__(self):
        rows = tuple(tuple(Fraction(v) for v in row) for row in self.rows)
        if not rows or not rows[0]:
            raise ValueError("matrix needs at least one row and one column")
        if any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("ragged matrix")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def of(cls, rows):
        return cls(tuple(tuple(r) for r in rows))

    @property
    def m(self):
        return len(self.rows)

    @property
    def n(self):
        return len(self.rows[0])

    @property
    def shape(self):
        return (self.m, self.n)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def flat(self):
        return [v for row in self.rows for v in row]

    def max_abs(self):
        return max(abs(v) for v in self.flat())

    def __str__(self):
        from . import rat_str
        cells = [[rat_str(v) for v in row] for row in self.rows]
        width = max(len(c) for row in cells for c in row)
        return "\n".join(" ".join(c.rjust(width) for c in row) for row in cells)


def rref(rows, ncols=None):
    """Reduced row echelon form over Q.

    Returns ``(reduced_rows, pivot_columns)``; zero rows are dropped.
    """
    mat = [[Fraction(v) for v in row] for row in rows]
    if ncols is None:
        ncols = len(mat[0]) if mat else 0
    for row in mat:
        if len(row) != ncols:
            raise ValueError(f"row of length {len(row)} in a system with {ncols} columns")
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((k for k in range(r, len(mat)) if mat[k][c] != 0), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        p = mat[r][c]
        if p != 1:
            mat[r] = [v / p for v in mat[r]]
        for k in range(len(mat)):
            if k != r and mat[k][c] != 0:
                f = mat[k][c]
                mat[k] = [a - f * b for a, b in zip(mat[k], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return [tuple(row) for row in mat[:r]], pivots


def affine_rank(forms, ncols=None):
    """Exact rank of a list of linear forms (coefficient vectors)."""
    forms = list(forms)
    if not forms:
        return 0
    return len(rref(forms, ncols)[1])


def nullspace(rows, ncols):
    """Basis of {v : row . v = 0 for every row}, as lists of Fractions."""
    red, pivots = rref(rows, ncols) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis
