"""Exact feasibility and optimisation for small rational linear systems.

The solver is a dense two-phase simplex with Bland's rule run on an
integer tableau (fraction-free pivoting: every entry is the true value
times the current basis determinant, so all divisions are exact).
Strict inequalities never reach the simplex directly; ``lp_feasible``
homogenises the system with an extra variable ``s > 0`` and asks for
margin 1 on every strict row, which is equivalent by scaling.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import lcm


@dataclass(frozen=True)
class LinSystem:
    """Rows are ``(coefficients, constant)`` pairs meaning

    * ``equalities``: coef . x == const
    * ``strict``:     coef . x >  const
    * ``weak``:       coef . x >= const
    """

    nvars: int
    equalities: tuple = ()
    strict: tuple = ()
    weak: tuple = ()

    def __post_init__(self):
        for name in ("equalities", "strict", "weak"):
            rows = tuple(
                (tuple(Fraction(c) for c in coefs), Fraction(const))
                for coefs, const in getattr(self, name)
            )
            for coefs, _ in rows:
                if len(coefs) != self.nvars:
                    raise ValueError(
                        f"{name} row has {len(coefs)} coefficients, system has {self.nvars} variables")
            object.__setattr__(self, name, rows)

    def __and__(self, other):
        if other.nvars != self.nvars:
            raise ValueError("cannot intersect systems over different variable counts")
        return LinSystem(self.nvars,
                         self.equalities + other.equalities,
                         self.strict + other.strict,
                         self.weak + other.weak)

    def with_rows(self, equalities=(), strict=(), weak=()):
        return LinSystem(self.nvars,
                         self.equalities + tuple(equalities),
                         self.strict + tuple(strict),
                         self.weak + tuple(weak))

    def closure(self):
        """Same system with every strict row weakened."""
        return LinSystem(self.nvars, self.equalities, (), self.weak + self.strict)

    def satisfied_by(self, x):
        def val(coefs):
            return sum(c * v for c, v in zip(coefs, x) if c)
        return (all(val(c) == k for c, k in self.equalities)
                and all(val(c) > k for c, k in self.strict)
                and all(val(c) >= k for c, k in self.weak))


@dataclass(frozen=True)
class Feasible:
    witness: tuple

    def __bool__(self):
        return True


@dataclass(frozen=True)
class Infeasible:
    def __bool__(self):
        return False


@dataclass
class _Result:
    status: str                 # "optimal" | "infeasible" | "unbounded"
    point: tuple = None
    value: Fraction = None


def _int_row(coefs):
    den = 1
    for c in coefs:
        den = lcm(den, c.denominator)
    return [int(c * den) for c in coefs]


class _Tableau:
    """Integer tableau; actual entry = stored / det."""

    def __init__(self, rows, basis, nstruct, art_cols):
        self.rows = rows            # constraint rows, last entry is rhs
        self.basis = basis
        self.nstruct = nstruct
        self.art_cols = art_cols
        self.det = 1
        self.objs = []              # objective rows, updated with every pivot

    def pivot(self, p, q):
        rows, det = self.rows, self.det
        prow = rows[p]
        pq = prow[q]
        for k, row in enumerate(rows):
            if k == p:
                continue
            f = row[q]
            if f:
                rows[k] = [(a * pq - f * b) // det for a, b in zip(row, prow)]
            elif pq != det:
                rows[k] = [a * pq // det for a in row]
        for k, row in enumerate(self.objs):
            f = row[q]
            if f:
                self.objs[k] = [(a * pq - f * b) // det for a, b in zip(row, prow)]
            elif pq != det:
                self.objs[k] = [a * pq // det for a in row]
        self.det = pq
        self.basis[p] = q
        if pq < 0:
            self.det = -pq
            self.rows = [[-a for a in row] for row in self.rows]
            self.objs = [[-a for a in row] for row in self.objs]

    def run(self, obj_index, allowed):
        """Minimise objective row ``obj_index``; Bland's rule. Returns 'optimal'|'unbounded'."""
        while True:
            obj = self.objs[obj_index]
            q = next((j for j in allowed if obj[j] < 0), None)
            if q is None:
                return "optimal"
            best = None
            for i, row in enumerate(self.rows):
                a = row[q]
                if a > 0:
                    if best is None:
                        best = i
                        continue
                    # compare row[-1]/a with best ratio, tie -> smaller basic index
                    lhs = row[-1] * self.rows[best][q]
                    rhs = self.rows[best][-1] * a
                    if lhs < rhs or (lhs == rhs and self.basis[i] < self.basis[best]):
                        best = i
            if best is None:
                return "unbounded"
            self.pivot(best, q)

    def values(self):
        out = [Fraction(0)] * self.nstruct
        for i, b in enumerate(self.basis):
            if b < self.nstruct:
                out[b] = Fraction(self.rows[i][-1], self.det)
        return out


def _solve(nvars, eq_rows, ge_rows, objective=None):
    """Core simplex over free variables.

    ``eq_rows``: (coefs, b) with coefs.x == b; ``ge_rows``: coefs.x >= b.
    ``objective``: coefficients to maximise, or None for pure feasibility.
    """
    # free x = xp - xn ; column layout: xp | xn | slacks | artificials | rhs
    n2 = 2 * nvars
    nslack = len(ge_rows)
    raw = []
    for coefs, b in eq_rows:
        raw.append((list(coefs), Fraction(b), None))
    for k, (coefs, b) in enumerate(ge_rows):
        raw.append((list(coefs), Fraction(b), k))

    needs_art = []
    int_rows = []
    for coefs, b, slack in raw:
        row = coefs + [-c for c in coefs] + [Fraction(0)] * nslack
        if slack is not None:
            row[n2 + slack] = Fraction(-1)
        row.append(b)
        if b < 0 or (b == 0 and slack is not None):
            row = [-v for v in row]
        int_rows.append(_int_row(row))
        # a ge-row with nonpositive rhs has its slack as a ready basic column
        needs_art.append(not (slack is not None and b <= 0))

    nart = sum(needs_art)
    width = n2 + nslack + nart
    rows, basis, art_cols = [], [], []
    a = 0
    for row, art, (_, _, slack) in zip(int_rows, needs_art, raw):
        body, rhs = row[:-1], row[-1]
        ext = body + [0] * nart + [rhs]
        if art:
            col = n2 + nslack + a
            ext[col] = 1
            basis.append(col)
            art_cols.append(col)
            a += 1
        else:
            # the slack only lives in this row, so rescaling the slack variable
            # makes its column a unit column without touching the rest
            col = n2 + slack
            ext[col] = 1
            basis.append(col)
        rows.append(ext)

    tab = _Tableau(rows, basis, n2, art_cols)
    width_total = width

    phase1 = [0] * (width_total + 1)
    art_set = set(art_cols)
    for i, col in enumerate(basis):
        if col in art_set:
            for j in range(width_total + 1):
                if j not in art_set:
                    phase1[j] -= rows[i][j]
    tab.objs.append(phase1)
    if objective is not None:
        obj_int = _int_row([-Fraction(c) for c in objective] + [Fraction(c) for c in objective])
        tab.objs.append(obj_int + [0] * (width_total - n2) + [0])

    non_art = [j for j in range(width_total) if j not in art_set]
    if art_cols:
        tab.run(0, non_art)
        if tab.objs[0][-1] != 0:
            return _Result("infeasible")
        # drive remaining (zero-level) artificials out of the basis
        k = 0
        while k < len(tab.rows):
            if tab.basis[k] in art_set:
                q = next((j for j in non_art if tab.rows[k][j] != 0), None)
                if q is None:
                    del tab.rows[k]
                    del tab.basis[k]
                    continue
                tab.pivot(k, q)
            k += 1

    if objective is not None:
        status = tab.run(1, non_art)
        if status == "unbounded":
            return _Result("unbounded")
    vals = tab.values()
    point = tuple(vals[i] - vals[nvars + i] for i in range(nvars))
    value = None
    if objective is not None:
        value = sum(Fraction(c) * v for c, v in zip(objective, point))
    return _Result("optimal", point, value)


def lp_feasible(system):
    """Decide exactly whether ``system`` has a solution.

    Returns ``Feasible(witness)`` (witness re-checked by substitution) or
    ``Infeasible()``.
    """
    if not isinstance(system, LinSystem):
        raise TypeError("lp_feasible expects a LinSystem")
    n = system.nvars
    # homogenise: variables (x, s); x_true = x / s
    eqs = [(list(c) + [-k], 0) for c, k in system.equalities]
    ges = [(list(c) + [-k], 0) for c, k in system.weak]
    ges += [(list(c) + [-k], 1) for c, k in system.strict]
    ges.append(([Fraction(0)] * n + [Fraction(1)], 1))
    res = _solve(n + 1, eqs, ges)
    if res.status == "infeasible":
        return Infeasible()
    *xs, s = res.point
    witness = tuple(v / s for v in xs)
    if not system.satisfied_by(witness):  # pragma: no cover - solver invariant
        raise AssertionError("simplex produced a witness that fails substitution")
    return Feasible(witness)


def lp_maximize(system, objective):
    """Maximise ``objective . x`` over a system without strict rows.

    Returns ``(status, value, point)`` with status one of
    ``"optimal"``, ``"unbounded"``, ``"infeasible"``.
    """
    if system.strict:
        raise ValueError("lp_maximize does not accept strict inequalities")
    if len(objective) != system.nvars:
        raise ValueError("objective length does not match variable count")
    res = _solve(system.nvars, system.equalities, system.weak, objective)
    return res.status, res.value, res.point


def implies(system, coefs, const, kind):
    """Does every solution of ``system`` satisfy ``coefs . x (kind) const``?

    ``kind`` is ``"eq"``, ``"ge"`` or ``"gt"``.  A system with no solutions
    implies everything.
    """
    neg = tuple(-Fraction(c) for c in coefs)
    const = Fraction(const)
    if kind == "ge":
        return not lp_feasible(system.with_rows(strict=[(neg, -const)]))
    if kind == "gt":
        return not lp_feasible(system.with_rows(weak=[(neg, -const)]))
    if kind == "eq":
        return (not lp_feasible(system.with_rows(strict=[(neg, -const)]))
                and not lp_feasible(system.with_rows(strict=[(tuple(coefs), const)])))
    raise ValueError(f"unknown relation kind {kind!r}")
