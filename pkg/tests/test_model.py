import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ergmcftp.graph import Graph, complete_graph, empty_graph, leq, slot_pair
from ergmcftp.model import ErgmModel, NotMonotoneError, logistic
from ergmcftp.motifs import EDGE, TRIANGLE, TWO_STAR, Motif

from brute import change, count_all
from test_graph import graphs

PATH4 = Motif(4, ((1, 2), (2, 3), (3, 4)))
CYCLE4 = Motif(4, ((1, 2), (2, 3), (3, 4), (1, 4)))
STAR3 = Motif(4, ((1, 2), (1, 3), (1, 4)))
EXTRA_MOTIFS = [TWO_STAR, TRIANGLE, PATH4, CYCLE4, STAR3]


@st.composite
def models(draw, min_n=4, max_n=7, monotone=True):
    n = draw(st.integers(min_n, max_n))
    extra = draw(st.lists(st.sampled_from(EXTRA_MOTIFS), max_size=3, unique=True))
    b1 = draw(st.floats(-2.0, 2.0))
    lo = 0.0 if monotone else -2.0
    rest = [draw(st.floats(lo, 2.0)) for _ in extra]
    return ErgmModel(n, (EDGE, *extra), (b1, *rest))


def test_log_weight_examples():
    x = Graph.from_edges(5, [(1, 2), (2, 3), (3, 4)])
    assert ErgmModel(5, (EDGE, TWO_STAR), (0.0, 0.0)).log_weight(x) == 0.0
    assert ErgmModel(5, (EDGE,), (0.5,)).log_weight(x) == pytest.approx(0.5 * 2 * 3)
    m = ErgmModel(3, (EDGE, TRIANGLE), (0.2, 0.3))
    k3 = complete_graph(3)
    expected = 0.2 * count_all(k3, EDGE) + 0.3 * count_all(k3, TRIANGLE) / 3
    assert expected == pytest.approx(1.8)
    assert m.log_weight(k3) == pytest.approx(expected, abs=1e-12)


def test_dimension_mismatch():
    m = ErgmModel(4, (EDGE,), (0.1,))
    with pytest.raises(ValueError):
        m.log_weight(empty_graph(5))
    with pytest.raises(ValueError):
        m.glauber_p1(empty_graph(3), (1, 2))


def test_model_validation():
    with pytest.raises(ValueError):
        ErgmModel(4, (TWO_STAR, EDGE), (0.1, 0.2))
    with pytest.raises(ValueError):
        ErgmModel(4, (EDGE, TWO_STAR), (0.1,))
    with pytest.raises(ValueError):
        ErgmModel(3, (EDGE, CYCLE4), (0.1, 0.2))
    with pytest.raises(ValueError):
        ErgmModel(4, (EDGE,), (float("nan"),))


def test_glauber_p1_examples():
    x = Graph.from_edges(4, [(1, 2)])
    assert ErgmModel(4, (EDGE,), (0.0,)).glauber_p1(x, (1, 3)) == 0.5
    m = ErgmModel(4, (EDGE,), (-1.1,))
    assert m.glauber_p1(x, (1, 3)) == pytest.approx(1 / (1 + math.exp(2.2)), rel=1e-14)

    m = ErgmModel(3, (EDGE, TWO_STAR), (-1.1, 0.4))
    k3 = complete_graph(3)
    d = change(k3, TWO_STAR, (1, 2))
    assert d == 4
    expected = 1 / (1 + math.exp(2.2 - 0.4 * d / 3))
    assert m.glauber_p1(k3, (1, 2)) == pytest.approx(expected, rel=1e-14)


def test_glauber_update_examples():
    m = ErgmModel(4, (EDGE, TRIANGLE), (0.3, 0.7))
    x = Graph.from_edges(4, [(1, 3), (2, 3)])
    e = (1, 2)
    assert m.glauber_update(x, e, 0.0)[e] == 0
    assert m.glauber_update(x, e, 1.0)[e] == 1
    m0 = ErgmModel(4, (EDGE,), (0.0,))
    assert m0.glauber_update(x, e, 0.6)[e] == 1
    assert m0.glauber_update(x, e, 0.5)[e] == 0
    with pytest.raises(ValueError):
        m.glauber_update(x, e, 1.5)
    with pytest.raises(ValueError):
        m.glauber_update(x, e, -0.1)


def test_is_monotone_examples():
    assert ErgmModel(80, (EDGE, TWO_STAR), (-1.1, 0.4)).is_monotone()
    assert ErgmModel(4, (EDGE,), (0.5,)).is_monotone()
    m = ErgmModel(4, (EDGE, TWO_STAR), (0.0, -0.1))
    assert not m.is_monotone()
    with pytest.raises(NotMonotoneError):
        m.require_monotone()


def test_logistic_is_stable():
    assert logistic(800.0) == 1.0
    assert logistic(-800.0) == 0.0
    assert logistic(0.0) == 0.5
    for t in np.linspace(-30, 30, 61):
        assert logistic(t) == pytest.approx(1 / (1 + math.exp(-t)), rel=1e-12)


def test_glauber_p1_extreme_parameters_stay_finite():
    m = ErgmModel(80, (EDGE, TWO_STAR), (-1.1, 50.0))
    x = complete_graph(80)
    p = m.glauber_p1(x, (1, 2))
    assert p == 1.0 and math.isfinite(m.log_odds(x, (1, 2)))


@given(models(), st.data())
@settings(max_examples=60, deadline=None)
def test_detailed_balance_consistency(model, data):
    x = data.draw(graphs(n=model.n_vertices))
    e = slot_pair(x.n, data.draw(st.integers(0, x.n_slots - 1)))
    p1 = model.glauber_p1(x, e)
    lhs = math.log(p1) - math.log1p(-p1)
    rhs = model.log_weight(x.with_edge(e, 1)) - model.log_weight(x.with_edge(e, 0))
    assert lhs == pytest.approx(rhs, abs=1e-10)


@given(models(), st.data())
@settings(max_examples=60, deadline=None)
def test_p1_does_not_depend_on_current_bit(model, data):
    x = data.draw(graphs(n=model.n_vertices))
    e = slot_pair(x.n, data.draw(st.integers(0, x.n_slots - 1)))
    assert model.glauber_p1(x.with_edge(e, 0), e) == model.glauber_p1(x.with_edge(e, 1), e)


@given(models(), st.data())
@settings(max_examples=60, deadline=None)
def test_monotone_coupling(model, data):
    n = model.n_vertices
    x = data.draw(graphs(n=n))
    z = Graph(n, x.bits | data.draw(st.integers(0, (1 << x.n_slots) - 1)))
    e = slot_pair(n, data.draw(st.integers(0, x.n_slots - 1)))
    u = data.draw(st.floats(0.0, 1.0))
    assert leq(model.glauber_update(x, e, u), model.glauber_update(z, e, u))


@given(models(max_n=5), st.data())
@settings(max_examples=40, deadline=None)
def test_p1_increasing_in_interaction_parameters(model, data):
    x = data.draw(graphs(n=model.n_vertices))
    e = slot_pair(x.n, data.draw(st.integers(0, x.n_slots - 1)))
    deltas = model.change_statistics(x, e)
    for k in range(1, len(model.motifs)):
        beta = list(model.beta)
        beta[k] += 0.25
        bumped = ErgmModel(model.n_vertices, model.motifs, beta)
        if deltas[k] > 0:
            assert bumped.glauber_p1(x, e) > model.glauber_p1(x, e) or model.glauber_p1(x, e) == 1.0
        else:
            assert bumped.glauber_p1(x, e) == model.glauber_p1(x, e)
