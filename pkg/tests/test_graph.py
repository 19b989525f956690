import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from pathweave.graph import (
    GeneratorConfig,
    Graph,
    GraphFormatError,
    Network,
    cost_to_weight,
    generate_random_graph,
    graph_to_network,
    load_graph,
    parse_edge_list,
    parse_json,
    save_graph,
)
from strategies import graphs


def test_rejects_self_loop():
    with pytest.raises(ValueError):
        Graph.from_edges(2, [(1, 1, 3)])


def test_rejects_duplicate_edge():
    with pytest.raises(ValueError):
        Graph.from_edges(2, [(0, 1, 3), (0, 1, 4)])


@pytest.mark.parametrize("edge", [(0, 2, 1.0), (-1, 0, 1.0), (0, 1, float("inf")), (0, 1, float("nan"))])
def test_rejects_bad_edges(edge):
    with pytest.raises(ValueError):
        Graph.from_edges(2, [edge])


def test_rejects_empty_graph():
    with pytest.raises(ValueError):
        Graph.from_edges(0, [])


def test_edge_cost_lookup(diamond):
    assert diamond.edge_cost(1, 2) == -3
    assert diamond.has_edge(0, 2)
    assert not diamond.has_edge(2, 0)
    with pytest.raises(KeyError):
        diamond.edge_cost(2, 1)
    np.testing.assert_array_equal(diamond.edge_cost([0, 1], [1, 2]), [1, -3])


def test_arrays_are_read_only(chain):
    with pytest.raises(ValueError):
        chain.cost[0] = 9


def test_generator_is_deterministic():
    cfg = GeneratorConfig(50, 0.2, seed=11)
    a, b = generate_random_graph(cfg), generate_random_graph(cfg)
    assert a.edges == b.edges
    assert generate_random_graph(cfg.with_seed(12)).edges != a.edges


def test_generator_respects_ranges():
    g = generate_random_graph(GeneratorConfig(60, 0.3, (1, 100), (-10, -1), neg_prob=0.2, seed=5))
    neg = g.cost[g.cost < 0]
    pos = g.cost[g.cost > 0]
    assert neg.size and pos.size
    assert neg.min() >= -10 and neg.max() <= -1
    assert pos.min() >= 1 and pos.max() <= 100
    assert np.all(g.cost == np.round(g.cost))
    assert not np.any(g.src == g.dst)


def test_generator_density():
    g = generate_random_graph(GeneratorConfig(200, 0.1, seed=0))
    assert g.edge_count / (200 * 199) == pytest.approx(0.1, rel=0.05)
    assert generate_random_graph(GeneratorConfig(30, 1.0)).edge_count == 30 * 29
    assert generate_random_graph(GeneratorConfig(30, 0.0)).edge_count == 0


def test_real_costs():
    g = generate_random_graph(GeneratorConfig(30, 0.5, (1, 10), seed=1, integer_costs=False))
    assert np.any(g.cost != np.round(g.cost))


@pytest.mark.parametrize("kwargs", [
    dict(node_count=0, edge_prob=0.1), dict(node_count=5, edge_prob=1.5),
    dict(node_count=5, edge_prob=0.1, pos_cost_range=(0, 10)),
    dict(node_count=5, edge_prob=0.1, neg_prob=0.1, neg_cost_range=(-1, 2)),
])
def test_generator_validation(kwargs):
    with pytest.raises(ValueError):
        GeneratorConfig(**kwargs)


def test_config_round_trip():
    cfg = GeneratorConfig(12, 0.3, (2, 9), (-4, -2), 0.1, 77, False)
    assert GeneratorConfig.from_dict(json.loads(json.dumps(cfg.to_dict()))) == cfg


def test_cost_to_weight():
    assert cost_to_weight(3, 100) == pytest.approx(0.97)
    assert cost_to_weight(-5, 100) == pytest.approx(1.05)
    with pytest.raises(ValueError):
        cost_to_weight(1, 0)


def test_network_incoming(diamond):
    net = graph_to_network(diamond, K=10)
    assert sorted(net.incoming(2)) == [(0, pytest.approx(0.5)), (1, pytest.approx(1.3))]
    assert net.incoming(0) == []
    assert net.connection_count == 3
    assert sorted(net.cost_of(2)) == [-3, 5]


def test_network_from_connections_sorted_by_post():
    net = Network.from_connections(3, [2, 0, 1], [0, 2, 2], [0.1, 0.2, 0.3])
    assert list(net.indptr) == [0, 1, 1, 3]
    assert net.incoming(2) == [(0, 0.2), (1, 0.3)]


@given(graphs(), st.sampled_from([".txt", ".json"]))
def test_io_round_trip(tmp_path_factory, g, ext):
    path = tmp_path_factory.mktemp("io") / f"g{ext}"
    save_graph(g, path)
    back = load_graph(path)
    assert back.node_count == g.node_count
    assert back.edges == g.edges


def test_edge_list_comments_and_blank_lines():
    g = parse_edge_list("# a graph\nnodes 3\n\n0 1 2.5  # inline\n1 2 -1\n")
    assert g.edges == [(0, 1, 2.5), (1, 2, -1.0)]


@pytest.mark.parametrize("text", ["0 1 2\n", "nodes 2\n0 1\n", "nodes 2\n0 x 3\n", "nodes 2\n0 5 1\n", "nodes two\n"])
def test_edge_list_errors(text):
    with pytest.raises(GraphFormatError):
        parse_edge_list(text)


@pytest.mark.parametrize("text", ["{", '{"nodes": 2}', '{"nodes": 2, "edges": [[0, 0, 1]]}'])
def test_json_errors(text):
    with pytest.raises(GraphFormatError):
        parse_json(text)
