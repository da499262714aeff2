"""Faces and regions of the bipartite arrangement x_i = y_j.

Letters: positive letter ``i`` stands for x_i, negative letter ``j'`` for y_j.
A region is written as the order of the coordinates, same-sign runs sorted;
a face as an ordered sequence of blocks.
"""

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import NamedTuple

import numpy as np

POS, NEG = 1, -1


class Letter(NamedTuple):
    sign: int
    index: int

    def __str__(self):
        return f"{self.index}'" if self.sign == NEG else str(self.index)

    @property
    def key(self):
        # enumeration order: by index, positive before negative
        return (self.index, 0 if self.sign == POS else 1)


def pos(i):
    return Letter(POS, i)


def neg(j):
    return Letter(NEG, j)


class OnHyperplane(ValueError):
    def __init__(self, i, j):
        super().__init__(f"point lies on the hyperplane x_{i} = y_{j}")
        self.i, self.j = i, j


class NotAcyclic(ValueError):
    pass


class LabelError(ValueError):
    pass


def parse_letter(tok):
    tok = tok.strip()
    m = re.fullmatch(r"(\d+)('?)", tok)
    if not m or int(m.group(1)) < 1:
        raise LabelError(f"bad letter {tok!r}")
    return Letter(NEG if m.group(2) else POS, int(m.group(1)))


def _runs(letters):
    """Maximal same-sign runs."""
    runs = []
    for L in letters:
        if runs and runs[-1][0].sign == L.sign:
            runs[-1].append(L)
        else:
            runs.append([L])
    return runs


def normalize_letters(letters):
    """Sort every maximal same-sign run by index."""
    out = []
    for run in _runs(letters):
        out.extend(sorted(run, key=lambda L: L.index))
    return tuple(out)


@dataclass(frozen=True)
class RegionLabel:
    m: int
    n: int
    letters: tuple

    def __post_init__(self):
        letters = tuple(self.letters)
        object.__setattr__(self, "letters", letters)
        want = {pos(i) for i in range(1, self.m + 1)} | {neg(j) for j in range(1, self.n + 1)}
        if len(letters) != self.m + self.n or set(letters) != want:
            raise LabelError(f"letters {' '.join(map(str, letters))} are not a permutation "
                             f"of 1..{self.m} and 1'..{self.n}'")
        for a, b in zip(letters, letters[1:]):
            if a.sign == b.sign and a.index > b.index:
                raise LabelError(f"same-sign letters {a} {b} are out of order")

    @classmethod
    def parse(cls, text, m=None, n=None):
        letters = [parse_letter(t) for t in text.split()]
        if m is None:
            m = sum(1 for L in letters if L.sign == POS)
        if n is None:
            n = sum(1 for L in letters if L.sign == NEG)
        return cls(m, n, tuple(letters))

    @classmethod
    def trusted(cls, m, n, letters):
        """Skip validation; for labels produced by the enumerators."""
        obj = object.__new__(cls)
        object.__setattr__(obj, "m", m)
        object.__setattr__(obj, "n", n)
        object.__setattr__(obj, "letters", letters)
        return obj

    @classmethod
    def from_letters(cls, m, n, letters):
        """Build from any ordering; same-sign runs are sorted."""
        return cls(m, n, normalize_letters(letters))

    def __str__(self):
        return " ".join(map(str, self.letters))

    def sort_key(self):
        return tuple(L.key for L in self.letters)

    def __lt__(self, other):
        return (self.m, self.n, self.sort_key()) < (other.m, other.n, other.sort_key())

    # positions in pi, used everywhere for "i precedes j'"
    @property
    def position(self):
        pos_map = self.__dict__.get("_position")
        if pos_map is None:
            pos_map = {L: k for k, L in enumerate(self.letters)}
            object.__setattr__(self, "_position", pos_map)
        return pos_map

    def precedes(self, i, j):
        """True iff letter i comes before letter j' (x_i < y_j in the region)."""
        return self.position[pos(i)] < self.position[neg(j)]

    def blocks(self):
        return [tuple(run) for run in _runs(self.letters)]

    def row_order(self):
        return tuple(L.index for L in self.letters if L.sign == POS)

    def col_order(self):
        return tuple(L.index for L in self.letters if L.sign == NEG)

    def is_positive(self):
        """Letter 1 before letter 1'."""
        return self.precedes(1, 1)


@dataclass(frozen=True)
class FaceLabel:
    m: int
    n: int
    blocks: tuple

    def __post_init__(self):
        blocks = tuple(tuple(sorted(b, key=lambda L: (-L.sign, L.index))) for b in self.blocks)
        object.__setattr__(self, "blocks", blocks)
        flat = [L for b in blocks for L in b]
        want = {pos(i) for i in range(1, self.m + 1)} | {neg(j) for j in range(1, self.n + 1)}
        if len(flat) != len(want) or set(flat) != want or any(not b for b in blocks):
            raise LabelError("blocks must partition all letters into non-empty sets")
        kinds = [block_kind(b) for b in blocks]
        for a, b in zip(kinds, kinds[1:]):
            if a == b and a != "mixed":
                raise LabelError("two consecutive unmixed blocks of the same sign")

    @classmethod
    def parse(cls, text, m=None, n=None):
        groups = re.findall(r"\[([^\]]*)\]", text)
        if not groups or re.sub(r"\[[^\]]*\]", "", text).strip():
            raise LabelError(f"bad face label {text!r}")
        blocks = [tuple(parse_letter(t) for t in g.split()) for g in groups]
        flat = [L for b in blocks for L in b]
        if m is None:
            m = sum(1 for L in flat if L.sign == POS)
        if n is None:
            n = sum(1 for L in flat if L.sign == NEG)
        return cls(m, n, tuple(blocks))

    def __str__(self):
        return " ".join("[" + " ".join(map(str, b)) + "]" for b in self.blocks)

    def kinds(self):
        return [block_kind(b) for b in self.blocks]


def block_kind(block):
    signs = {L.sign for L in block}
    if len(signs) == 2:
        return "mixed"
    return "positive" if POS in signs else "negative"


@dataclass(frozen=True)
class Orientation:
    """``forward[i][j]`` is True for u_{i+1} -> v_{j+1}."""

    m: int
    n: int
    forward: tuple

    def is_acyclic(self):
        alive_u = set(range(self.m))
        alive_v = set(range(self.n))
        while alive_u or alive_v:
            src_u = {i for i in alive_u if all(self.forward[i][j] for j in alive_v)}
            src_v = {j for j in alive_v if not any(self.forward[i][j] for i in alive_u)}
            if not src_u and not src_v:
                return False
            alive_u -= src_u
            alive_v -= src_v
        return True


@dataclass(frozen=True)
class XYPoint:
    x: tuple
    y: tuple

    def __post_init__(self):
        object.__setattr__(self, "x", tuple(Fraction(v) for v in self.x))
        object.__setattr__(self, "y", tuple(Fraction(v) for v in self.y))

    @property
    def m(self):
        return len(self.x)

    @property
    def n(self):
        return len(self.y)


# -- point location ---------------------------------------------------------

def face_of_point(p):
    values = sorted({*p.x, *p.y})
    groups = []
    for v in values:
        xs = [pos(i + 1) for i, a in enumerate(p.x) if a == v]
        ys = [neg(j + 1) for j, b in enumerate(p.y) if b == v]
        kind = "mixed" if xs and ys else ("positive" if xs else "negative")
        if groups and kind != "mixed" and groups[-1][0] == kind:
            groups[-1][1].extend(xs + ys)
        else:
            groups.append((kind, xs + ys))
    return FaceLabel(p.m, p.n, tuple(tuple(g) for _, g in groups))


def region_of_point(p):
    for i, a in enumerate(p.x):
        for j, b in enumerate(p.y):
            if a == b:
                raise OnHyperplane(i + 1, j + 1)
    face = face_of_point(p)
    return RegionLabel(p.m, p.n, tuple(L for b in face.blocks for L in b))


def face_dimension(face):
    return sum(1 if block_kind(b) == "mixed" else len(b) for b in face.blocks)


# -- enumeration ------------------------------------------------------------

@lru_cache(maxsize=None)
def _bits(mask):
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length())
        mask ^= low
    return tuple(out)


def enumerate_regions(m, n):
    """All region labels of A_{m,n}, lexicographic in the letter order.

    Streams in chunks (one per leading letter) so large shapes are not
    materialised at once.
    """
    total = m + n
    P = [None] + [pos(i) for i in range(1, m + 1)]
    N = [None] + [neg(j) for j in range(1, n + 1)]

    def rec(seq, last_sign, last_idx, left_p, left_n, out):
        if not left_p or not left_n:
            # one sign left: the tail is forced to be a single sorted run
            if left_p:
                tail = [P[i] for i in _bits(left_p)]
            else:
                tail = [N[j] for j in _bits(left_n)]
            out.append(tuple(seq) + tuple(tail))
            return
        # same-sign successors must have a larger index
        if last_sign == POS:
            cand_p = left_p & ~((1 << last_idx) - 1)
            cand_n = left_n
        elif last_sign == NEG:
            cand_p = left_p
            cand_n = left_n & ~((1 << last_idx) - 1)
        else:
            cand_p, cand_n = left_p, left_n
        cands = sorted([(i, 0) for i in _bits(cand_p)] + [(j, 1) for j in _bits(cand_n)])
        for idx, s in cands:
            bit = 1 << (idx - 1)
            if s == 0:
                lp, ln = left_p ^ bit, left_n
                # dead end: only positives left and one is below idx
                if not ln and lp and (lp & -lp).bit_length() < idx:
                    continue
                seq.append(P[idx])
                rec(seq, POS, idx, lp, ln, out)
            else:
                lp, ln = left_p, left_n ^ bit
                if not lp and ln and (ln & -ln).bit_length() < idx:
                    continue
                seq.append(N[idx])
                rec(seq, NEG, idx, lp, ln, out)
            seq.pop()

    full_p, full_n = (1 << m) - 1, (1 << n) - 1
    if total == 0:
        yield RegionLabel.trusted(m, n, ())
        return
    firsts = sorted([(i, 0) for i in range(1, m + 1)] + [(j, 1) for j in range(1, n + 1)])
    for idx, s in firsts:
        out = []
        if s == 0:
            lp, ln = full_p ^ (1 << (idx - 1)), full_n
            if ln or not lp or (lp & -lp).bit_length() > idx:
                rec([P[idx]], POS, idx, lp, ln, out)
        else:
            lp, ln = full_p, full_n ^ (1 << (idx - 1))
            if lp or not ln or (ln & -ln).bit_length() > idx:
                rec([N[idx]], NEG, idx, lp, ln, out)
        for letters in out:
            yield RegionLabel.trusted(m, n, letters)


def enumerate_faces(m, n):
    """All face labels of A_{m,n} (ordered block partitions, no two adjacent
    unmixed blocks of one sign)."""
    P = [pos(i) for i in range(1, m + 1)]
    N = [neg(j) for j in range(1, n + 1)]

    def subsets(items):
        for k in range(len(items) + 1):
            yield from combinations(items, k)

    def rec(restP, restN, prev_kind, acc):
        if not restP and not restN:
            yield FaceLabel(m, n, tuple(acc))
            return
        for sp in subsets(restP):
            for sn in subsets(restN):
                if not sp and not sn:
                    continue
                kind = "mixed" if sp and sn else ("positive" if sp else "negative")
                if kind != "mixed" and kind == prev_kind:
                    continue
                yield from rec([L for L in restP if L not in sp],
                               [L for L in restN if L not in sn],
                               kind, acc + [sp + sn])

    yield from rec(P, N, None, [])


def count_acyclic_orientations(m, n):
    """Brute force over all 2^(mn) orientations of K_{m,n}.

    Vectorised source-peeling: an orientation is acyclic iff repeatedly
    deleting sources empties the graph.
    """
    if m == 0 or n == 0:
        return 1
    total = 1 << (m * n)
    codes = np.arange(total, dtype=np.uint64)
    fwd = np.empty((m, n, total), dtype=bool)
    for i in range(m):
        for j in range(n):
            fwd[i, j] = (codes >> np.uint64(i * n + j)) & np.uint64(1)
    alive_u = np.ones((m, total), dtype=bool)
    alive_v = np.ones((n, total), dtype=bool)
    for _ in range(m + n):
        # u_i has an incoming edge from an alive v_j when the bit is 0
        blocked_u = np.any(alive_v[None, :, :] & ~fwd, axis=1)
        blocked_v = np.any(alive_u[:, None, :] & fwd, axis=0)
        src_u = alive_u & ~blocked_u
        src_v = alive_v & ~blocked_v
        alive_u &= ~src_u
        alive_v &= ~src_v
    done = ~(alive_u.any(axis=0) | alive_v.any(axis=0))
    return int(done.sum())


# -- orientations -------------------------------------------------------------

def region_to_orientation(r):
    return Orientation(r.m, r.n, tuple(
        tuple(r.precedes(i, j) for j in range(1, r.n + 1)) for i in range(1, r.m + 1)))


def orientation_to_region(o):
    alive_u = set(range(o.m))
    alive_v = set(range(o.n))
    letters = []
    while alive_u or alive_v:
        src_u = sorted(i for i in alive_u if all(o.forward[i][j] for j in alive_v))
        src_v = sorted(j for j in alive_v if not any(o.forward[i][j] for i in alive_u))
        if not src_u and not src_v:
            raise NotAcyclic("orientation has a directed cycle")
        # sources of K_{m,n} never mix signs while both sides are alive
        if src_u and src_v and alive_u and alive_v:  # pragma: no cover
            raise AssertionError("mixed sources")
        letters += [pos(i + 1) for i in src_u] + [neg(j + 1) for j in src_v]
        alive_u -= set(src_u)
        alive_v -= set(src_v)
    return RegionLabel.from_letters(o.m, o.n, letters)


def region_orientation_bijection(r):
    return region_to_orientation(r)


# -- label manipulation -----------------------------------------------------

def negate_region(r):
    """Label of -R: the reversed permutation, re-normalised."""
    return RegionLabel.from_letters(r.m, r.n, reversed(r.letters))


@dataclass(frozen=True)
class BlockStats:
    first: int
    last: int
    blocks: tuple        # ((sign, size), ...)


def block_stats(r):
    blocks = r.blocks()
    return BlockStats(len(blocks[0]), len(blocks[-1]),
                      tuple((b[0].sign, len(b)) for b in blocks))


def region_from_comparisons(pos_idx, neg_idx, before):
    """Order letters from an acyclic comparison predicate ``before(i, j)``
    (x_i < y_j).  Returns the normalised letter tuple, or raises NotAcyclic."""
    alive_u = set(pos_idx)
    alive_v = set(neg_idx)
    letters = []
    while alive_u or alive_v:
        src_u = sorted(i for i in alive_u if all(before(i, j) for j in alive_v))
        src_v = sorted(j for j in alive_v if not any(before(i, j) for i in alive_u))
        if not src_u and not src_v:
            raise NotAcyclic("comparisons contain a cycle")
        letters += [pos(i) for i in src_u] + [neg(j) for j in src_v]
        alive_u -= set(src_u)
        alive_v -= set(src_v)
    return normalize_letters(letters)
