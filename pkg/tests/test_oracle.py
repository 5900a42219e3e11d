import math

import numpy as np
import pytest

from ergmcftp.graph import Graph, complete_graph, empty_graph
from ergmcftp.model import ErgmModel
from ergmcftp.motifs import EDGE, TRIANGLE, TWO_STAR, count_motif
from ergmcftp.oracle import (
    MixingNotReached,
    dbar_curve,
    empirical_distribution,
    exact_distribution,
    exact_t_mix,
    exact_transition_matrix,
    format_oracle_csv,
    tv_distance,
)


def test_free_model_is_uniform():
    for n in (2, 3, 4):
        p = exact_distribution(ErgmModel(n, (EDGE,), (0.0,))).probabilities
        assert np.allclose(p, 1 / 2 ** (n * (n - 1) // 2))


def test_edge_model_is_product_bernoulli():
    b = -0.7
    d = exact_distribution(ErgmModel(4, (EDGE,), (b,)))
    q = math.exp(2 * b) / (1 + math.exp(2 * b))
    for s, p in enumerate(d.probabilities):
        e = bin(s).count("1")
        assert p == pytest.approx(q ** e * (1 - q) ** (6 - e), rel=1e-12)


def test_triangle_model_closed_form_on_three_vertices():
    d = exact_distribution(ErgmModel(3, (EDGE, TRIANGLE), (0.2, 0.3)))
    z = 1 + 3 * math.exp(0.4) + 3 * math.exp(0.8) + math.exp(1.8)
    assert d.log_z == pytest.approx(math.log(z), rel=1e-13)
    for s, p in enumerate(d.probabilities):
        x = Graph(3, s)
        t = count_motif(x, TRIANGLE) // 6
        assert p == pytest.approx(math.exp(0.4 * x.edge_count() + 0.6 * t) / z, rel=1e-12)


def test_free_chain_transition_entries():
    P = exact_transition_matrix(ErgmModel(3, (EDGE,), (0.0,)))
    assert P.shape == (8, 8)
    assert np.allclose(P.sum(axis=1), 1.0)
    for a in range(8):
        for b in range(8):
            flips = bin(a ^ b).count("1")
            expected = {0: 0.5, 1: 1 / 6}.get(flips, 0.0)
            assert P[a, b] == pytest.approx(expected, abs=1e-15)


@pytest.mark.parametrize("beta", [(-1.1, 0.4, 0.0), (0.3, 0.2, 0.7), (0.5, -0.3, -0.2)])
def test_exact_kernel_is_local_stochastic_and_stationary(beta):
    model = ErgmModel(4, (EDGE, TWO_STAR, TRIANGLE), beta)
    P = exact_transition_matrix(model)
    p = exact_distribution(model).probabilities
    assert np.allclose(P.sum(axis=1), 1.0, atol=1e-14)
    far = np.array([[bin(a ^ b).count("1") > 1 for b in range(64)] for a in range(64)])
    assert not P[far].any()
    assert np.max(np.abs(p @ P - p)) <= 1e-12
    # reversibility
    flow = p[:, None] * P
    assert np.allclose(flow, flow.T, atol=1e-15)


def test_dbar_and_t_mix_on_two_vertices():
    P = exact_transition_matrix(ErgmModel(2, (EDGE,), (0.0,)))
    curve = dbar_curve(P, 5)
    assert curve[0] == 1.0 and curve[1] == 0.0
    assert exact_t_mix(P) == 1


def test_dbar_is_non_increasing_and_threshold_monotone():
    P = exact_transition_matrix(ErgmModel(4, (EDGE, TRIANGLE), (0.2, 0.3)))
    curve = dbar_curve(P, 60)
    assert np.all(np.diff(curve) <= 1e-15)
    t = exact_t_mix(P)
    assert curve[t] <= 1 / math.e < curve[t - 1]
    assert exact_t_mix(P, 0.1) >= t >= exact_t_mix(P, 0.5)
    with pytest.raises(MixingNotReached):
        exact_t_mix(P, 1e-9, n_max=3)


def test_tv_examples():
    assert tv_distance([0.5, 0.5], [0.75, 0.25]) == pytest.approx(0.25)
    assert tv_distance([1, 0], [0, 1]) == 1.0
    p = np.full(8, 1 / 8)
    assert tv_distance(p, p) == 0.0
    with pytest.raises(ValueError):
        tv_distance([1.0], [0.5, 0.5])


def test_empirical_distribution():
    samples = [empty_graph(3), empty_graph(3), complete_graph(3), Graph(3, 2)]
    e = empirical_distribution(samples, 3)
    assert e[0] == 0.5 and e[7] == 0.25 and e[2] == 0.25 and e.sum() == 1.0


def test_oracle_size_limit():
    with pytest.raises(ValueError):
        exact_distribution(ErgmModel(6, (EDGE,), (0.0,)))
    with pytest.raises(ValueError):
        exact_transition_matrix(ErgmModel(6, (EDGE,), (0.0,)))


def test_oracle_csv():
    text = format_oracle_csv(exact_distribution(ErgmModel(2, (EDGE,), (0.0,))), ["hello"])
    assert text == "# hello\nstate_bits,probability\n0,0.5\n1,0.5\n"
