"""Generating functions for faces, regions and cells, checked against enumeration."""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .arrangement import enumerate_faces, enumerate_regions, face_dimension
from .ratcore import Egf3


@lru_cache(maxsize=None)
def _stirling2(n, k):
    if n == k:
        return 1
    if k == 0 or k > n:
        return 0
    return k * _stirling2(n - 1, k) + _stirling2(n - 1, k - 1)


def region_count(m, n):
    """Number of regions of A_{m,n} in closed form (poly-Bernoulli numbers)."""
    return sum(factorial(k) ** 2 * _stirling2(m + 1, k + 1) * _stirling2(n + 1, k + 1)
               for k in range(min(m, n) + 1))


def _exp_x(orders, c=1):
    return Egf3.exp_linear(orders, c, x=1)


def _exp_y(orders, c=1):
    return Egf3.exp_linear(orders, c, y=1)


def face_egf(k_max, m_max, n_max):
    """Coefficients f_{k,m,n}: faces of dimension k in A_{m,n}."""
    o = (k_max, m_max, n_max)
    emtx = Egf3.exp_linear(o, -1, t=1, x=1)
    emty = Egf3.exp_linear(o, -1, t=1, y=1)
    t = Egf3.monomial(o, 1, t=1)
    denom = emtx + emty - t * (_exp_x(o) - 1) * (_exp_y(o) - 1) - 1
    return denom.reciprocal()


def unmixed_face_egf(k_max, m_max, n_max):
    """Faces whose blocks are all unmixed: 1 / (e^{-tx} + e^{-ty} - 1)."""
    o = (k_max, m_max, n_max)
    return (Egf3.exp_linear(o, -1, t=1, x=1) + Egf3.exp_linear(o, -1, t=1, y=1) - 1).reciprocal()


def region_egf(m_max, n_max):
    o = (0, m_max, n_max)
    ex, ey = _exp_x(o), _exp_y(o)
    return ex * ey / (ex + ey - ex * ey)


def large_egf(m_max, n_max):
    o = (0, m_max, n_max)
    ex, ey = _exp_x(o), _exp_y(o)
    x = Egf3.monomial(o, 1, x=1)
    y = Egf3.monomial(o, 1, y=1)
    X = x * (ey - y - 1)
    Y = y * (ex - x - 1)
    top = 2 * X * Y + X * X * (ex - 1) + Y * Y * (ey - 1)
    return Fraction(1, 2) * (x * X + y * Y) + top / (2 * (ex + ey - ex * ey))


def small_formula(m, n):
    if m < 2 or n < 2:
        return 0
    return 2 * comb(m, 2) * comb(n, 2) * region_count(m - 2, n - 2)


def brute_region_count(m, n):
    return sum(1 for _ in enumerate_regions(m, n))


def brute_face_counts(m, n):
    tally = {}
    for f in enumerate_faces(m, n):
        d = face_dimension(f)
        tally[d] = tally.get(d, 0) + 1
    return tally


@dataclass
class CountReport:
    m_max: int
    n_max: int
    entries: list = field(default_factory=list)       # dicts: quantity, key, values by source
    discrepancies: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def add(self, quantity, key, **values):
        row = {"quantity": quantity, "key": list(key),
               "values": {src: v for src, v in values.items() if v is not None}}
        self.entries.append(row)
        vals = set(row["values"].values())
        if len(vals) > 1:
            self.discrepancies.append(row)
        return row

    def to_json(self):
        return {"mMax": self.m_max, "nMax": self.n_max, "entries": self.entries,
                "discrepancies": self.discrepancies, "notes": self.notes}

    def table(self):
        lines = [f"{'quantity':<10} {'key':<12} values"]
        for e in self.entries:
            vals = "  ".join(f"{k}={v}" for k, v in e["values"].items())
            key = ",".join(map(str, e["key"]))
            lines.append(f"{e['quantity']:<10} {key:<12} {vals}")
        lines.append(f"discrepancies: {len(self.discrepancies)}")
        lines += [f"note: {n}" for n in self.notes]
        return "\n".join(lines)


def crosscheck(m_max, n_max, total_max=6, cell_max=3):
    """Compare series and formulas with enumeration over m <= m_max, n <= n_max.

    Faces are checked for m + n <= total_max, cell counts for m, n <= cell_max.
    """
    from .cells import count_cells

    rep = CountReport(m_max, n_max)
    regs = region_egf(m_max, n_max)
    faces = face_egf(m_max + n_max, m_max, n_max)
    large = large_egf(m_max, n_max)
    for m in range(m_max + 1):
        for n in range(n_max + 1):
            rep.add("regions", (m, n), egf=int(regs.count(0, m, n)),
                    formula=region_count(m, n), bruteforce=brute_region_count(m, n))
            if m + n <= total_max:
                tally = brute_face_counts(m, n)
                for k in range(m + n + 1):
                    rep.add("faces", (k, m, n), egf=int(faces.count(k, m, n)),
                            bruteforce=tally.get(k, 0))
            if 2 <= m <= cell_max and 2 <= n <= cell_max:
                sc = count_cells(m, n, "small")
                rep.add("small", (m, n), formula=small_formula(m, n),
                        bruteforce=sc["distinctImages"])
                lc = count_cells(m, n, "large")
                rep.add("large", (m, n), egf=int(large.count(0, m, n)),
                        bruteforce=lc["positiveRegions"])
                if lc["distinctImages"] != lc["positiveRegions"]:
                    rep.notes.append(
                        f"large ({m},{n}): {lc['distinctImages']} distinct images, "
                        f"{lc['positiveRegions']} positive large regions")
                if sc["positiveRegions"] != sc["distinctImages"]:
                    rep.notes.append(
                        f"small ({m},{n}): {sc['distinctImages']} distinct images, "
                        f"{sc['positiveRegions']} positive small regions")
    return rep
