import random

import numpy as np
import pytest

from mwmatch.baselines import (
    DenseCostMatrix,
    FlowNetwork,
    hungarian_eager,
    hungarian_eager_graph,
    mcmf_dijkstra,
)
from mwmatch.certificate import check_certificate
from mwmatch.graph import GraphError, build
from mwmatch.kwok import solve
from mwmatch.oracle import brute_force_mwm

from conftest import assert_stats_bounds, random_graph


def test_dense_matrix_from_graph(two_by_two):
    m = DenseCostMatrix.from_graph(two_by_two)
    assert m.weights.tolist() == [[5, 1], [2, 3]]
    p = DenseCostMatrix.from_graph(build(1, 3, [(0, 2, 4)])).padded()
    assert p.weights.shape == (3, 3) and p.weights[1:].sum() == 0


def test_dense_matrix_rejects_unclean():
    with pytest.raises(GraphError):
        DenseCostMatrix.from_graph(build(1, 1, [(0, 0, -2)]))


@pytest.mark.parametrize("virtual", [False, True])
def test_eager_two_by_two(two_by_two, virtual):
    res = hungarian_eager_graph(two_by_two, virtual)
    assert res.matching.total_weight == 8
    assert check_certificate(two_by_two, res.matching, res.labels.h_left, res.labels.h_right) == []


def test_eager_one_by_two():
    res = hungarian_eager(DenseCostMatrix(1, 2, np.array([[4, 9]])))
    assert res.matching.total_weight == 9
    assert res.stats.h_adjustments <= 1


def test_eager_virtual_forms_agree():
    rng = random.Random(3)
    for _ in range(100):
        edges = [(l, r, rng.randint(1, 20)) for l in range(5) for r in range(10) if rng.random() < 0.5]
        g = build(5, 10, edges)
        a = hungarian_eager_graph(g, False)
        b = hungarian_eager_graph(g, True)
        assert a.matching.total_weight == b.matching.total_weight
        assert all(d <= g.n_left for d in a.stats.bfs_h_adjustments)
        assert all(d <= g.n_right for d in b.stats.bfs_h_adjustments)


def test_eager_real_weights():
    g = build(2, 3, [(0, 0, 1.5), (0, 1, 2.25), (1, 1, 3.0)])
    res = hungarian_eager_graph(g)
    assert res.matching.total_weight == pytest.approx(4.5)


def test_eager_huge_weights_use_exact_arithmetic():
    big = 2**62
    g = build(2, 2, [(0, 0, big), (0, 1, big - 1), (1, 0, big - 1), (1, 1, 1)])
    assert hungarian_eager_graph(g).matching.total_weight == 2 * big - 2


def test_mcmf_two_by_two(two_by_two):
    assert mcmf_dijkstra(two_by_two, debug=True).matching.total_weight == 8


def test_mcmf_single_edge():
    res = mcmf_dijkstra(build(1, 1, [(0, 0, 7)]))
    assert res.matching.pairs == [(0, 0)] and res.matching.total_weight == 7


def test_mcmf_rejects_unclean():
    with pytest.raises(GraphError):
        mcmf_dijkstra(build(1, 1, [(0, 0, 0)]))


def test_initial_potentials_nonnegative_reduced_costs():
    rng = random.Random(5)
    for _ in range(100):
        net = FlowNetwork(random_graph(rng))
        assert net.min_reduced_cost() >= 0


def test_all_solvers_agree_with_oracle_200():
    rng = random.Random(200)
    for _ in range(200):
        g = random_graph(rng)
        w = brute_force_mwm(g)[1]
        k = solve(g).matching.total_weight
        mc = mcmf_dijkstra(g, debug=True)
        eager = hungarian_eager_graph(g)
        virt = hungarian_eager_graph(g, True)
        assert k == mc.matching.total_weight == eager.matching.total_weight == virt.matching.total_weight == w
        assert mc.matching.is_valid(g) and eager.matching.is_valid(g)


def test_eager_certificate_and_stats():
    rng = random.Random(9)
    for _ in range(200):
        g = random_graph(rng, nonempty_rows=True)
        res = hungarian_eager_graph(g)
        assert check_certificate(g, res.matching, res.labels.h_left, res.labels.h_right) == []
        assert all(d <= g.n_left for d in res.stats.bfs_h_adjustments)
