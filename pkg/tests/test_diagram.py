import random
from itertools import combinations

import networkx as nx
import pytest
import sympy

from tropbip.arrangement import RegionLabel, enumerate_regions, negate_region, region_to_orientation
from tropbip.diagram import (Rect, RectRelation, cell_size_class, classify_rect, diagram_of,
                             image_dimension, relations_v1, relations_v2, span_equalities)
from tropbip.morphism import delta, eval_g, lift, linearization
from tropbip.ratcore import affine_rank

P = RegionLabel.parse
FIG1 = "2' 4' 3 1' 1 2 3' 5'"


def rel(i1, i2, j1, j2, kind):
    return RectRelation(i1, i2, j1, j2, kind)


def test_figure_one_diagram():
    d = diagram_of(P(FIG1))
    assert d.rows == (3, 1, 2) and d.cols == (2, 4, 1, 3, 5)
    colours = ["".join(d.color(r, c) for c in range(5)) for r in range(3)]
    assert colours == ["BBWWW", "BBBWW", "BBBWW"]
    assert d.path == "EESESSEE"


def test_extreme_diagrams():
    assert not any(map(any, diagram_of(P("1 2 1' 2'")).black))
    assert all(map(all, diagram_of(P("1' 2' 1 2")).black))


def test_classify_rect_examples():
    d = diagram_of(P(FIG1))
    assert classify_rect(d, Rect(3, 1, 2, 4)) == "monochromatic"
    assert classify_rect(d, Rect(1, 2, 1, 3)) == "sliced"
    assert classify_rect(d, Rect(3, 2, 4, 1)) == "jagged"
    with pytest.raises(ValueError):
        classify_rect(d, Rect(1, 3, 2, 4))        # rows out of diagram order


def test_relation_examples():
    assert relations_v1(P("1 1' 2 2'")) == {rel(1, 2, 1, 2, "GT")}
    assert relations_v1(P("1 2 1' 2'")) == {rel(1, 2, 1, 2, "EQ")}
    assert relations_v1(P("1 1' 2' 2")) == set()
    assert relations_v2(diagram_of(P("1 1' 2 2'"))) == {rel(1, 2, 1, 2, "GT")}
    fig = relations_v2(diagram_of(P(FIG1)))
    assert rel(3, 1, 2, 4, "EQ") in fig and rel(3, 2, 4, 1, "GT") in fig


def test_span_equality_examples():
    eqs = span_equalities(diagram_of(P("1 2 1' 2'")))
    assert eqs == {rel(1, 2, 1, 2, "EQ")}
    assert span_equalities(diagram_of(P("1 1' 2 2'"))) == set()
    assert rel(1, 2, 2, 4, "EQ") in span_equalities(diagram_of(P(FIG1)))


def test_dimension_and_class_examples():
    assert image_dimension(P("1 1' 2 2'")) == 4
    assert image_dimension(P("1 2 1' 2'")) == 3
    assert image_dimension(P(FIG1)) == 10
    assert cell_size_class(P("1 1' 2 2'")) == "small"
    assert cell_size_class(P("1 1' 2' 2")) == "large"
    assert cell_size_class(P("1 1' 2' 2 3'")) == "medium"


def test_relation_rejects_degenerate_quadruple():
    with pytest.raises(ValueError):
        RectRelation(1, 1, 1, 2, "EQ")
    with pytest.raises(ValueError):
        RectRelation(1, 2, 1, 2, "LT")


def _shapes(limit=3):
    return [(m, n) for m in range(1, limit + 1) for n in range(1, limit + 1)]


@pytest.mark.parametrize("m,n", _shapes())
def test_versions_agree(m, n):
    for r in enumerate_regions(m, n):
        assert relations_v1(r) == relations_v2(diagram_of(r)), str(r)


@pytest.mark.parametrize("m,n", [(2, 2), (2, 3), (3, 2), (3, 3)])
def test_relations_match_sampled_signs(m, n):
    """Oracle: the sign of each oriented Delta over many points of the region.

    Listed relations must hold at every sample, identically-zero Deltas must
    be listed equalities, and every unlisted Delta must change sign.
    """
    rng = random.Random(m * 10 + n)
    for r in enumerate_regions(m, n):
        d = diagram_of(r)
        rels = relations_v2(d)
        signs = {}
        for _ in range(30):
            G = eval_g(lift(r, rng))
            assert all(x.holds(G) for x in rels), str(r)
            for (i1, i2) in combinations(d.rows, 2):
                for (j1, j2) in combinations(d.cols, 2):
                    v = delta(G, i1, i2, j1, j2)
                    signs.setdefault((i1, i2, j1, j2), set()).add((v > 0) - (v < 0))
        for q, s in signs.items():
            if s == {0}:
                assert RectRelation(*q, "EQ") in rels, (str(r), q)
            elif RectRelation(*q, "GT") not in rels:
                # sliced box: both signs occur in the region
                assert {1, -1} <= s, (str(r), q)


@pytest.mark.parametrize("m,n", _shapes())
def test_dimension_is_rank_of_linearisation(m, n):
    for r in enumerate_regions(m, n):
        assert image_dimension(r) == sympy.Matrix(linearization(r)).rank(), str(r)


@pytest.mark.parametrize("m,n", [(2, 2), (2, 3), (3, 3)])
def test_span_dimension_of_extreme_regions(m, n):
    for text in (" ".join([str(i) for i in range(1, m + 1)] + [f"{j}'" for j in range(1, n + 1)]),):
        r = P(text)
        forms = [x.coefficients(m, n) for x in span_equalities(diagram_of(r))]
        # the all-white image spans m + n - 1 dimensions
        assert m * n - (len(forms) and sympy.Matrix(forms).rank()) == m + n - 1
    assert affine_rank([[0] * (m * n)]) == 0


@pytest.mark.parametrize("m,n", [(2, 2), (2, 3), (3, 3), (2, 4)])
def test_class_and_dimension_symmetric_under_negation(m, n):
    for r in enumerate_regions(m, n):
        assert cell_size_class(r) == cell_size_class(negate_region(r))
        assert image_dimension(r) == image_dimension(negate_region(r))


@pytest.mark.parametrize("m,n", [(2, 2), (2, 3), (3, 3), (3, 4)])
def test_maximal_dimension_iff_unique_source_and_sink(m, n):
    for r in enumerate_regions(m, n):
        o = region_to_orientation(r)
        g = nx.DiGraph()
        g.add_nodes_from([("u", i) for i in range(m)] + [("v", j) for j in range(n)])
        for i in range(m):
            for j in range(n):
                g.add_edge(("u", i), ("v", j)) if o.forward[i][j] else g.add_edge(("v", j), ("u", i))
        sources = sum(1 for v in g if g.in_degree(v) == 0)
        sinks = sum(1 for v in g if g.out_degree(v) == 0)
        maximal = image_dimension(r) == 2 * m + 2 * n - 4
        assert maximal == (sources == 1 and sinks == 1), str(r)


def test_render_mentions_every_row():
    text = diagram_of(P(FIG1)).render()
    assert "path: EESESSEE" in text and text.count("\n") == 4
