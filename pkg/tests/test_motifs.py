import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ergmcftp.graph import Graph, complete_graph, empty_graph, leq, slot_pair
from ergmcftp.motifs import (
    EDGE,
    TRIANGLE,
    TWO_STAR,
    Motif,
    change_statistic,
    change_statistic_generic,
    count_motif,
    count_motif_at_edge,
    count_motif_generic,
    parse_motif,
)

from brute import change, count_all, count_through
from test_graph import graphs

PATH4 = Motif(4, ((1, 2), (2, 3), (3, 4)))
STAR3 = Motif(4, ((1, 2), (1, 3), (1, 4)))
CYCLE4 = Motif(4, ((1, 2), (2, 3), (3, 4), (1, 4)))
DIAMOND = Motif(4, ((1, 2), (1, 3), (2, 3), (2, 4), (3, 4)))
PENDANT = Motif(3, ((1, 2),))  # isolated motif vertex
SMALL_MOTIFS = [EDGE, TWO_STAR, TRIANGLE, PATH4, STAR3, CYCLE4, DIAMOND, PENDANT]


def test_count_examples():
    k3 = complete_graph(3)
    assert count_motif(k3, TRIANGLE) == 6
    assert count_motif(k3, TWO_STAR) == 6
    assert count_all(k3, TWO_STAR) == 6
    x = Graph.from_edges(5, [(1, 2), (2, 3), (4, 5)])
    assert count_motif(x, EDGE) == 2 * 3


def test_count_at_edge_examples():
    k3 = complete_graph(3)
    assert count_motif_at_edge(k3, TRIANGLE, (1, 2)) == 6
    assert count_motif_at_edge(Graph.from_edges(3, [(1, 2)]), EDGE, (1, 2)) == 2


def test_change_examples():
    x = complete_graph(3).with_edge((1, 2), 0)
    assert change_statistic(x, TRIANGLE, (1, 2)) == 6
    assert change(x, TRIANGLE, (1, 2)) == 6
    assert change_statistic(empty_graph(4), TWO_STAR, (1, 2)) == 0
    assert change(empty_graph(4), TWO_STAR, (1, 2)) == 0


@given(graphs(max_n=6), st.data())
def test_change_edge_is_two(x, data):
    e = slot_pair(x.n, data.draw(st.integers(0, x.n_slots - 1)))
    assert change_statistic(x, EDGE, e) == 2


def test_motif_too_large():
    with pytest.raises(ValueError):
        count_motif(empty_graph(2), TRIANGLE)
    with pytest.raises(ValueError):
        change_statistic(empty_graph(3), CYCLE4, (1, 2))


@pytest.mark.parametrize("g", SMALL_MOTIFS, ids=lambda g: g.label)
@given(x=graphs(min_n=4, max_n=6))
@settings(max_examples=25, deadline=None)
def test_counts_match_permutation_oracle(g, x):
    assert count_motif(x, g) == count_all(x, g)
    assert count_motif_generic(x, g) == count_all(x, g)


@pytest.mark.parametrize("g", SMALL_MOTIFS, ids=lambda g: g.label)
@given(x=graphs(min_n=4, max_n=6), data=st.data())
@settings(max_examples=25, deadline=None)
def test_count_at_edge_matches_oracle(g, x, data):
    e = slot_pair(x.n, data.draw(st.integers(0, x.n_slots - 1)))
    assert count_motif_at_edge(x, g, e) == count_through(x, g, e)


@pytest.mark.parametrize("g", SMALL_MOTIFS, ids=lambda g: g.label)
@given(x=graphs(min_n=4, max_n=6), data=st.data())
@settings(max_examples=25, deadline=None)
def test_change_statistic_identity(g, x, data):
    """Added count equals the edge-restricted count on the graph with the edge."""
    e = slot_pair(x.n, data.draw(st.integers(0, x.n_slots - 1)))
    d = change_statistic(x, g, e)
    assert d == change(x, g, e)
    assert d == count_motif_at_edge(x.with_edge(e, 1), g, e) - count_motif_at_edge(
        x.with_edge(e, 0), g, e
    )
    assert d >= 0
    assert d == change_statistic(x.with_edge(e, 1 - x[e]), g, e)


@pytest.mark.parametrize("g", SMALL_MOTIFS, ids=lambda g: g.label)
@given(x=graphs(min_n=4, max_n=7), data=st.data())
@settings(max_examples=25, deadline=None)
def test_change_statistic_order_monotone(g, x, data):
    extra = data.draw(st.integers(0, (1 << x.n_slots) - 1))
    z = Graph(x.n, x.bits | extra)
    assert leq(x, z)
    e = slot_pair(x.n, data.draw(st.integers(0, x.n_slots - 1)))
    assert change_statistic(x, g, e) <= change_statistic(z, g, e)


@given(x=graphs(min_n=4, max_n=6), perm=st.permutations([1, 2, 3, 4]))
@settings(max_examples=40, deadline=None)
def test_count_invariant_under_motif_relabelling(x, perm):
    for g in (PATH4, STAR3, CYCLE4, DIAMOND):
        relabelled = Motif(4, tuple((perm[a - 1], perm[b - 1]) for a, b in g.edges))
        assert count_motif(x, relabelled) == count_motif(x, g)


def test_relabelled_two_star_uses_fast_path_correctly():
    g = Motif(3, ((1, 3), (2, 3)))
    assert g.kind == "two_star"
    x = Graph.from_edges(5, [(1, 2), (1, 3), (2, 3), (3, 4), (4, 5)])
    for e in [(1, 2), (1, 4), (2, 5)]:
        assert change_statistic(x, g, e) == change_statistic_generic(x, g, e)
    assert count_motif(x, g) == count_all(x, g)


def test_parse_motif():
    assert parse_motif("edge") == EDGE
    assert parse_motif("two_star") == TWO_STAR
    assert parse_motif(" triangle ") == TRIANGLE
    g = parse_motif("custom(4; 1-2, 2-3, 3-4)")
    assert g == PATH4 and g.kind is None
    assert parse_motif(g.spec()) == g
    assert "," not in g.label
    for s in ["square", "custom(3; )", "custom(3; 1-1)", "custom(3; 1-4)", "custom(1; 1-2)",
              "custom(3; a-b)"]:
        with pytest.raises(ValueError):
            parse_motif(s)


def test_zero_edge_motif_rejected():
    with pytest.raises(ValueError):
        Motif(3, ())
