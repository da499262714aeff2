"""Acceptance criteria 1-10, all exact.  Each test prints one PASS/FAIL line.

Run standalone with ``python3 tests/test_acceptance.py`` for the summary only.
"""

import random
import sys
import time
from fractions import Fraction

import pytest
import sympy

from tropbip.arrangement import (count_acyclic_orientations, enumerate_faces, enumerate_regions,
                                 face_dimension, negate_region)
from tropbip.cells import barvinok2_decide, count_cells, small_cells_containing, verify_subdivision
from tropbip.counts import face_egf, large_egf, region_egf, small_formula
from tropbip.diagram import diagram_of, image_dimension, relations_v1, relations_v2
from tropbip.morphism import (ParamPoint, eval_g, gauge_normalize, generic_fiber, linearization,
                              random_param_point, region_of_params)
from tropbip.ratcore import Matrix


def _report(number, passed, detail, started):
    line = f"criterion {number:>2}: {'PASS' if passed else 'FAIL'}  {detail}  [{time.time() - started:.1f}s]"
    print(line, flush=True)
    return passed


def criterion_1():
    t0 = time.time()
    shapes = [(m, n) for m in range(0, 17) for n in range(0, 17) if m * n <= 16 and m + n <= 17]
    series = region_egf(16, 16)
    bad = []
    for m, n in shapes:
        got = sum(1 for _ in enumerate_regions(m, n))
        if not got == count_acyclic_orientations(m, n) == series.count(0, m, n):
            bad.append((m, n))
    anchors = {(m, n): sum(1 for _ in enumerate_regions(m, n)) for m, n in [(1, 1), (1, 2), (2, 2), (2, 3)]}
    ok = not bad and anchors == {(1, 1): 2, (1, 2): 4, (2, 2): 14, (2, 3): 46}
    return _report(1, ok, f"region counts over {len(shapes)} shapes, mismatches {bad}", t0)


def criterion_2():
    t0 = time.time()
    bad = []
    shapes = [(m, n) for m in range(7) for n in range(7) if m + n <= 6]
    series = face_egf(6, 6, 6)
    for m, n in shapes:
        tally = {}
        for f in enumerate_faces(m, n):
            tally[face_dimension(f)] = tally.get(face_dimension(f), 0) + 1
        want = {k: int(series.count(k, m, n)) for k in range(7) if series.count(k, m, n)}
        if tally != want:
            bad.append((m, n))
    one = {k: int(series.count(k, 1, 1)) for k in range(3) if series.count(k, 1, 1)}
    ok = not bad and one == {2: 2, 1: 1}
    return _report(2, ok, f"face tallies over {len(shapes)} shapes, mismatches {bad}", t0)


def criterion_3():
    t0 = time.time()
    total, bad = 0, []
    for m in range(1, 4):
        for n in range(1, 4):
            for r in enumerate_regions(m, n):
                total += 1
                if relations_v1(r) != relations_v2(diagram_of(r)):
                    bad.append(str(r))
    return _report(3, not bad, f"{total} regions, {len(bad)} disagree", t0)


def criterion_4():
    t0 = time.time()
    total, bad, exceptions = 0, [], 0
    for m in range(1, 4):
        for n in range(1, 4):
            for r in enumerate_regions(m, n):
                total += 1
                dim = image_dimension(r)
                if dim != sympy.Matrix(linearization(r)).rank():
                    bad.append(str(r))
                if m >= 2 and n >= 2 and (not any(map(any, diagram_of(r).black))
                                          or all(map(all, diagram_of(r).black))):
                    exceptions += 1
                    if dim != m + n - 1:
                        bad.append(str(r))
    return _report(4, not bad and exceptions == 8,
                   f"{total} regions, {exceptions} one-colour regions, {len(bad)} wrong", t0)


def criterion_5():
    t0 = time.time()
    bad = []
    for m, n in [(2, 2), (2, 3), (3, 3), (3, 4)]:
        rng = random.Random(1000 * m + n)
        for _ in range(1000):
            G = eval_g(random_param_point(m, n, rng))
            d = barvinok2_decide(G)
            if not d or eval_g(d.preimage) != G:
                bad.append((m, n, G))
    rejected = not barvinok2_decide(Matrix.of([[0, 1, 1], [1, 0, 1], [1, 1, 0]]))
    return _report(5, not bad and rejected,
                   f"4000 round trips, {len(bad)} failures, witness rejected: {rejected}", t0)


def criterion_6():
    t0 = time.time()
    results = {}
    for m, n in [(2, 2), (2, 3), (3, 3)]:
        rep = verify_subdivision(m, n, samples=500, seed=m * 10 + n)
        results[(m, n)] = [c["name"] for c in rep["checks"] if not c["passed"]]
    ok = all(not v for v in results.values())
    return _report(6, ok, f"failed checks by shape {results}", t0)


def criterion_7():
    t0 = time.time()
    got = {(m, n): (count_cells(m, n, "small")["distinctImages"], small_formula(m, n))
           for m, n in [(2, 2), (2, 3), (3, 2), (3, 3)]}
    ok = all(a == b for a, b in got.values()) and got[(2, 2)] == (2, 2)
    return _report(7, ok, f"(distinct small images, formula) {got}", t0)


def criterion_8():
    t0 = time.time()
    series = large_egf(3, 3)
    got = {}
    for m, n in [(2, 2), (2, 3), (3, 3)]:
        c = count_cells(m, n, "large")
        got[(m, n)] = (int(series.count(0, m, n)), c["positiveRegions"], c["distinctImages"])
    ok = all(e == p for e, p, _ in got.values()) and got[(2, 2)][0] == 2
    return _report(8, ok, f"(egf, positive large regions, distinct images) {got}", t0)


def _swap_pair(p):
    """The other parameter point with the same image: (a, b) <-> (A, B)."""
    return ParamPoint(p.A, p.a, p.B, p.b)


def _corner_flip_only(d1, d2):
    colour2 = {(d2.rows[r], d2.cols[c]): d2.black[r][c]
               for r in range(len(d2.rows)) for c in range(len(d2.cols))}
    diff = {(r, c) for r in range(len(d1.rows)) for c in range(len(d1.cols))
            if d1.black[r][c] != colour2[(d1.rows[r], d1.cols[c])]}
    return diff <= {(0, 0), (len(d1.rows) - 1, len(d1.cols) - 1)}


def _check_fiber(G, f, rng):
    """Four distinct positive regions; each is a corner flip of the base or the
    negation of one; ten sampled points per quadrant evaluate back to G, and so
    do their swapped copies, which lie in the positive region."""
    if len(set(f.positive_regions)) != 4 or not all(r.is_positive() for r in f.positive_regions):
        return False
    base = diagram_of(f.base_region)
    for q in f.quadrants:
        if q.positive_region not in (q.region, negate_region(q.region)):
            return False
        if not _corner_flip_only(base, diagram_of(q.region)):
            return False
        for _ in range(10):
            p = q.point([Fraction(rng.randint(1, 60), rng.randint(1, 5)) for _ in q.free])
            if eval_g(p) != G or region_of_params(p) != q.region:
                return False
            s = _swap_pair(p)
            if eval_g(s) != G or region_of_params(s) != negate_region(q.region):
                return False
            positive = p if q.positive_region == q.region else s
            if region_of_params(positive) != q.positive_region:
                return False
    return True


def criterion_9():
    t0 = time.time()
    bad, tried = [], 0
    for m, n in [(3, 3), (3, 4)]:
        rng = random.Random(90 + 10 * m + n)
        done = 0
        while done < 100:
            tried += 1
            G = eval_g(random_param_point(m, n, rng))
            if len(small_cells_containing(G)) != 1:
                continue                      # image of a lower-dimensional region
            done += 1
            f = generic_fiber(G)
            if f.degenerate or not _check_fiber(G, f, rng):
                bad.append(G)
    G = Matrix.of([[3, 1], [0, 2]])
    f = generic_fiber(G, (0, 0))
    anchor = (f.degenerate
              and [str(r) for r in f.regions] == ["1 1' 2 2'", "1' 1 2 2'", "1 1' 2' 2", "1' 1 2' 2"]
              and f.apex == {("a", 2): 2, ("b", 1): 2, ("B", 2): 2, ("A", 1): 3}
              and _check_fiber(G, f, random.Random(2)))
    return _report(9, not bad and anchor,
                   f"200 generic fibers ({tried} draws), {len(bad)} failures, 2x2 anchor: {anchor}", t0)


def criterion_10():
    t0 = time.time()
    bad = 0
    for m, n in [(2, 2), (2, 3), (3, 3), (3, 4)]:
        rng = random.Random(m * 7 + n)
        for _ in range(1000):
            p = random_param_point(m, n, rng)
            pin = (Fraction(rng.randint(-50, 50), rng.randint(1, 9)),
                   Fraction(rng.randint(-50, 50), rng.randint(1, 9)))
            if eval_g(gauge_normalize(p, pin)) != eval_g(p):
                bad += 1
    return _report(10, bad == 0, f"4000 gauge shifts, {bad} changed the image", t0)


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10]


@pytest.mark.parametrize("check", CRITERIA, ids=[f"criterion_{k}" for k in range(1, 11)])
def test_acceptance(check, capsys):
    with capsys.disabled():
        passed = check()
    assert passed


if __name__ == "__main__":
    results = [check() for check in CRITERIA]
    print(f"{sum(results)}/{len(results)} criteria pass")
    sys.exit(0 if all(results) else 1)
