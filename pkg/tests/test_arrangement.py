import itertools
import random
from fractions import Fraction

import networkx as nx
import pytest
from hypothesis import given, strategies as st

from tropbip.arrangement import (FaceLabel, LabelError, NotAcyclic, OnHyperplane, Orientation,
                                 RegionLabel, XYPoint, block_stats, count_acyclic_orientations,
                                 enumerate_faces, enumerate_regions, face_dimension, face_of_point,
                                 negate_region, orientation_to_region, region_of_point,
                                 region_to_orientation)

P = RegionLabel.parse


def _nx_acyclic_count(m, n):
    """Independent oracle: networkx cycle test on every orientation."""
    total = 0
    edges = [(i, j) for i in range(m) for j in range(n)]
    for bits in itertools.product((0, 1), repeat=len(edges)):
        g = nx.DiGraph()
        g.add_nodes_from([("u", i) for i in range(m)] + [("v", j) for j in range(n)])
        for (i, j), b in zip(edges, bits):
            g.add_edge(("u", i), ("v", j)) if b else g.add_edge(("v", j), ("u", i))
        total += nx.is_directed_acyclic_graph(g)
    return total


def _points_oracle_regions(m, n):
    """Labels of all strict orders of m + n distinct values, normalised."""
    out = set()
    for perm in itertools.permutations(range(m + n)):
        pt = XYPoint(tuple(Fraction(v) for v in perm[:m]), tuple(Fraction(v) for v in perm[m:]))
        out.add(str(region_of_point(pt)))
    return out


def test_label_parsing_and_validation():
    r = P("2' 4' 3 1' 1 2 3' 5'")
    assert (r.m, r.n) == (3, 5)
    assert str(r) == "2' 4' 3 1' 1 2 3' 5'"
    with pytest.raises(LabelError):
        P("2 1 1'")                  # unsorted run
    with pytest.raises(LabelError):
        RegionLabel(2, 1, P("1 1'").letters)
    with pytest.raises(ValueError):
        P("1 x")


def test_region_of_sample_point():
    # y2, y4 < x3 < y1 < x1, x2 < y3, y5
    x = (Fraction(4), Fraction(4), Fraction(2))
    y = (Fraction(3), Fraction(0), Fraction(5), Fraction(1), Fraction(6))
    assert str(region_of_point(XYPoint(x, y))) == "2' 4' 3 1' 1 2 3' 5'"


def test_face_with_mixed_blocks():
    # x1,x3 < y2,y5,y7 < x5 < x2=y3=y6 < y1 < x6 < x4=x7=y4 < y8
    x = (0, 3, 0, 6, 2, 5, 6)
    y = (4, 1, 3, 6, 1, 3, 1, 7)
    pt = XYPoint(tuple(map(Fraction, x)), tuple(map(Fraction, y)))
    f = face_of_point(pt)
    assert str(f) == "[1 3] [2' 5' 7'] [5] [2 3' 6'] [1'] [6] [4 7 4'] [8']"
    assert face_dimension(f) == 11


def test_region_of_point_rejects_hyperplane():
    with pytest.raises(OnHyperplane):
        region_of_point(XYPoint((Fraction(1),), (Fraction(1),)))


def test_face_label_validation():
    with pytest.raises(LabelError):
        FaceLabel.parse("[1] [2] [1']")
    with pytest.raises(LabelError):
        FaceLabel.parse("[1] [1'")
    f = FaceLabel.parse("[1 1'] [2]")
    assert f.kinds() == ["mixed", "positive"] and face_dimension(f) == 2


@pytest.mark.parametrize("m,n", [(1, 1), (1, 2), (2, 2), (2, 3), (3, 2), (1, 4), (3, 3)])
def test_regions_match_point_oracle(m, n):
    labels = [str(r) for r in enumerate_regions(m, n)]
    assert len(labels) == len(set(labels))
    assert set(labels) == _points_oracle_regions(m, n)


@pytest.mark.parametrize("m,n", [(1, 1), (1, 2), (2, 2), (2, 3), (3, 3), (2, 4)])
def test_brute_orientation_count_matches_networkx(m, n):
    assert count_acyclic_orientations(m, n) == _nx_acyclic_count(m, n)


def test_region_anchor_counts():
    # r_{1,1}, r_{1,2}, r_{2,2}, r_{2,3} checked against the networkx oracle above
    got = {(m, n): sum(1 for _ in enumerate_regions(m, n)) for m, n in [(1, 1), (1, 2), (2, 2), (2, 3)]}
    assert got == {(1, 1): _nx_acyclic_count(1, 1), (1, 2): _nx_acyclic_count(1, 2),
                   (2, 2): _nx_acyclic_count(2, 2), (2, 3): _nx_acyclic_count(2, 3)}
    assert got == {(1, 1): 2, (1, 2): 4, (2, 2): 14, (2, 3): 46}


def test_enumeration_order_is_lexicographic():
    regs = list(enumerate_regions(3, 2))
    assert regs == sorted(regs)
    assert str(regs[0]) == "1 1' 2 2' 3"


def test_empty_arrangements_have_one_region():
    assert sum(1 for _ in enumerate_regions(0, 0)) == 1
    assert [str(r) for r in enumerate_regions(2, 0)] == ["1 2"]


def _faces_by_points(m, n):
    """Every weak order of m + n values realised as a point."""
    out = set()
    for vals in itertools.product(range(m + n), repeat=m + n):
        used = sorted(set(vals))
        if used != list(range(len(used))):
            continue
        pt = XYPoint(tuple(Fraction(v) for v in vals[:m]), tuple(Fraction(v) for v in vals[m:]))
        out.add(str(face_of_point(pt)))
    return out


@pytest.mark.parametrize("m,n", [(1, 1), (1, 2), (2, 2), (2, 3)])
def test_faces_match_point_oracle(m, n):
    faces = [str(f) for f in enumerate_faces(m, n)]
    assert len(faces) == len(set(faces))
    assert set(faces) == _faces_by_points(m, n)


def test_face_tally_one_one():
    tally = {}
    for f in enumerate_faces(1, 1):
        tally[face_dimension(f)] = tally.get(face_dimension(f), 0) + 1
    assert tally == {2: 2, 1: 1}


@pytest.mark.parametrize("m,n", [(2, 2), (2, 3), (3, 3)])
def test_orientation_bijection(m, n):
    seen = set()
    for r in enumerate_regions(m, n):
        o = region_to_orientation(r)
        assert orientation_to_region(o) == r
        seen.add(o.forward)
    assert len(seen) == count_acyclic_orientations(m, n)


def test_cyclic_orientation_is_rejected():
    o = Orientation(2, 2, ((True, False), (False, True)))
    assert not o.is_acyclic()
    with pytest.raises(NotAcyclic):
        orientation_to_region(o)


@st.composite
def xy_points(draw, max_m=4, max_n=4):
    m = draw(st.integers(1, max_m))
    n = draw(st.integers(1, max_n))
    vals = draw(st.lists(st.fractions(-5, 5, max_denominator=4), min_size=m + n, max_size=m + n))
    return XYPoint(tuple(vals[:m]), tuple(vals[m:]))


@given(xy_points())
def test_face_of_point_respects_comparisons(pt):
    f = face_of_point(pt)
    value = {}
    for k, block in enumerate(f.blocks):
        for L in block:
            value[L] = k
    for i, a in enumerate(pt.x):
        for j, b in enumerate(pt.y):
            ki, kj = value[(1, i + 1)], value[(-1, j + 1)]
            assert (a < b) == (ki < kj) and (a == b) == (ki == kj)
    dims = face_dimension(f)
    assert 1 <= dims <= pt.m + pt.n


@given(xy_points())
def test_negation_reverses_region(pt):
    if any(a == b for a in pt.x for b in pt.y):
        return
    r = region_of_point(pt)
    neg = region_of_point(XYPoint(tuple(-v for v in pt.x), tuple(-v for v in pt.y)))
    assert negate_region(r) == neg
    assert negate_region(neg) == r


def test_block_stats():
    st_ = block_stats(P("1' 1 2 2'"))
    assert (st_.first, st_.last) == (1, 1)
    assert [size for _, size in st_.blocks] == [1, 2, 1]


def test_random_point_region_is_total_order():
    rng = random.Random(3)
    for _ in range(200):
        m, n = rng.randint(1, 5), rng.randint(1, 5)
        vals = rng.sample(range(100), m + n)
        pt = XYPoint(tuple(map(Fraction, vals[:m])), tuple(map(Fraction, vals[m:])))
        r = region_of_point(pt)
        for i in range(1, m + 1):
            for j in range(1, n + 1):
                assert r.precedes(i, j) == (pt.x[i - 1] < pt.y[j - 1])
