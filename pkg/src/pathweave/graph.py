"""Graph and network representations, random generation and the cost/weight transform."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

RNG_IDENTITY = "numpy.random.Generator(PCG64), seeded with seed + stream index"


class GraphFormatError(ValueError):
    """Raised when a graph file or edge list violates the graph invariants."""


@dataclass(frozen=True, eq=False)
class Graph:
    """Directed weighted graph stored as parallel edge arrays.

    Edge order is significant: Bellman-Ford v1 relaxes edges in exactly this order.
    """

    node_count: int
    src: np.ndarray
    dst: np.ndarray
    cost: np.ndarray
    _keys: np.ndarray = field(init=False, repr=False)
    _order: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        n = int(self.node_count)
        if n <= 0:
            raise GraphFormatError("node_count must be positive")
        src = np.ascontiguousarray(self.src, dtype=np.int64)
        dst = np.ascontiguousarray(self.dst, dtype=np.int64)
        cost = np.ascontiguousarray(self.cost, dtype=np.float64)
        if not (src.shape == dst.shape == cost.shape) or src.ndim != 1:
            raise GraphFormatError("src, dst and cost must be 1-D arrays of equal length")
        if src.size:
            if src.min() < 0 or dst.min() < 0 or src.max() >= n or dst.max() >= n:
                raise GraphFormatError("edge endpoint outside [0, node_count)")
            if np.any(src == dst):
                raise GraphFormatError("self-loops are not allowed")
            if not np.all(np.isfinite(cost)):
                raise GraphFormatError("edge costs must be finite")
        keys = src * n + dst
        order = np.argsort(keys, kind="stable")
        sorted_keys = keys[order]
        if sorted_keys.size > 1 and np.any(sorted_keys[1:] == sorted_keys[:-1]):
            raise GraphFormatError("duplicate edge (u, v)")
        for arr in (src, dst, cost, sorted_keys, order):
            arr.setflags(write=False)
        object.__setattr__(self, "node_count", n)
        object.__setattr__(self, "src", src)
        object.__setattr__(self, "dst", dst)
        object.__setattr__(self, "cost", cost)
        object.__setattr__(self, "_keys", sorted_keys)
        object.__setattr__(self, "_order", order)

    @classmethod
    def from_edges(cls, node_count: int, edges) -> "Graph":
        edges = list(edges)
        if not edges:
            return cls(node_count, np.empty(0, np.int64), np.empty(0, np.int64), np.empty(0))
        u, v, c = zip(*edges)
        return cls(node_count, np.array(u), np.array(v), np.array(c, dtype=np.float64))

    @property
    def edge_count(self) -> int:
        return int(self.src.size)

    @property
    def edges(self) -> list[tuple[int, int, float]]:
        return list(zip(self.src.tolist(), self.dst.tolist(), self.cost.tolist()))

    def edge_cost(self, u, v):
        """Cost of edge(s) u -> v; accepts scalars or arrays. Raises KeyError for missing edges."""
        u_arr = np.asarray(u, dtype=np.int64)
        v_arr = np.asarray(v, dtype=np.int64)
        keys = u_arr * self.node_count + v_arr
        pos = np.searchsorted(self._keys, keys)
        pos_clipped = np.minimum(pos, max(self._keys.size - 1, 0))
        found = (pos < self._keys.size) & (self._keys[pos_clipped] == keys) if self._keys.size else np.zeros(keys.shape, bool)
        if not np.all(found):
            missing = np.atleast_1d(keys)[~np.atleast_1d(found)][0]
            raise KeyError(f"no edge {missing // self.node_count} -> {missing % self.node_count}")
        out = self.cost[self._order[pos_clipped]]
        return float(out) if out.ndim == 0 else out

    def has_edge(self, u: int, v: int) -> bool:
        try:
            self.edge_cost(u, v)
        except KeyError:
            return False
        return True

    def to_json_dict(self) -> dict:
        return {"nodes": self.node_count, "edges": [[u, v, c] for u, v, c in self.edges]}


@dataclass(frozen=True)
class GeneratorConfig:
    node_count: int
    edge_prob: float
    pos_cost_range: tuple[float, float] = (1.0, 100.0)
    neg_cost_range: tuple[float, float] = (-10.0, -1.0)
    neg_prob: float = 0.0
    seed: int = 0
    integer_costs: bool = True

    def __post_init__(self):
        object.__setattr__(self, "pos_cost_range", tuple(float(x) for x in self.pos_cost_range))
        object.__setattr__(self, "neg_cost_range", tuple(float(x) for x in self.neg_cost_range))
        self.validate()

    def validate(self) -> None:
        if self.node_count <= 0:
            raise ValueError("node_count must be positive")
        if not 0.0 <= self.edge_prob <= 1.0:
            raise ValueError("edge_prob must lie in [0, 1]")
        if not 0.0 <= self.neg_prob <= 1.0:
            raise ValueError("neg_prob must lie in [0, 1]")
        lo, hi = self.pos_cost_range
        if not 0 < lo <= hi:
            raise ValueError("pos_cost_range must satisfy 0 < lower <= upper")
        nlo, nhi = self.neg_cost_range
        if self.neg_prob > 0 and not nlo <= nhi < 0:
            raise ValueError("neg_cost_range must satisfy lower <= upper < 0 when neg_prob > 0")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")

    def with_seed(self, seed: int) -> "GeneratorConfig":
        return GeneratorConfig(
            self.node_count, self.edge_prob, self.pos_cost_range, self.neg_cost_range,
            self.neg_prob, seed, self.integer_costs,
        )

    def to_dict(self) -> dict:
        return {
            "node_count": self.node_count,
            "edge_prob": self.edge_prob,
            "pos_cost_range": list(self.pos_cost_range),
            "neg_cost_range": list(self.neg_cost_range),
            "neg_prob": self.neg_prob,
            "seed": self.seed,
            "integer_costs": self.integer_costs,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "GeneratorConfig":
        return cls(
            int(d["node_count"]),
            float(d["edge_prob"]),
            tuple(d.get("pos_cost_range", (1.0, 100.0))),
            tuple(d.get("neg_cost_range", (-10.0, -1.0))),
            float(d.get("neg_prob", 0.0)),
            int(d.get("seed", 0)),
            bool(d.get("integer_costs", True)),
        )


def _draw_costs(rng: np.random.Generator, lo: float, hi: float, size: int, integer: bool) -> np.ndarray:
    if integer:
        return rng.integers(math.ceil(lo), math.floor(hi), size=size, endpoint=True).astype(np.float64)
    return rng.uniform(lo, hi, size=size)


def generate_random_graph(config: GeneratorConfig) -> Graph:
    """Erdos-Renyi style directed graph: each ordered pair u != v is an edge with probability edge_prob.

    Edges come out sorted by (u, v). The draw order is fixed (adjacency, sign, positive
    costs, negative costs) so a given config reproduces the same graph bit for bit.
    """
    config.validate()
    n = config.node_count
    rng = np.random.default_rng(config.seed)
    mask = rng.random((n, n)) < config.edge_prob
    np.fill_diagonal(mask, False)
    src, dst = np.nonzero(mask)
    m = src.size
    negative = rng.random(m) < config.neg_prob
    cost = _draw_costs(rng, *config.pos_cost_range, m, config.integer_costs)
    n_neg = int(negative.sum())
    if n_neg:
        cost[negative] = _draw_costs(rng, *config.neg_cost_range, n_neg, config.integer_costs)
    return Graph(n, src, dst, cost)


def cost_to_weight(cost: float, K: float) -> float:
    if not K > 0:
        raise ValueError("K must be positive")
    return 1.0 - cost / K


@dataclass(frozen=True, eq=False)
class Network:
    """Incoming-connection (CSR) view of a graph: neuron i's inputs are
    sources[indptr[i]:indptr[i+1]] with matching weights and original costs."""

    neuron_count: int
    indptr: np.ndarray
    sources: np.ndarray
    weights: np.ndarray
    costs: np.ndarray

    def incoming(self, i: int) -> list[tuple[int, float]]:
        lo, hi = self.indptr[i], self.indptr[i + 1]
        return list(zip(self.sources[lo:hi].tolist(), self.weights[lo:hi].tolist()))

    def cost_of(self, i: int) -> list[float]:
        return self.costs[self.indptr[i]:self.indptr[i + 1]].tolist()

    @property
    def connection_count(self) -> int:
        return int(self.sources.size)

    @classmethod
    def from_connections(cls, neuron_count: int, pre, post, weights, costs=None) -> "Network":
        """Group connections by post-synaptic neuron, keeping input order within a neuron."""
        pre = np.asarray(pre, dtype=np.int64)
        post = np.asarray(post, dtype=np.int64)
        weights = np.asarray(weights, dtype=np.float64)
        costs = np.full(weights.shape, np.nan) if costs is None else np.asarray(costs, dtype=np.float64)
        order = np.argsort(post, kind="stable")
        counts = np.bincount(post, minlength=neuron_count)
        indptr = np.zeros(neuron_count + 1, dtype=np.int64)
        np.cumsum(counts, out=indptr[1:])
        return cls(
            neuron_count,
            indptr,
            np.ascontiguousarray(pre[order]),
            np.ascontiguousarray(weights[order]),
            np.ascontiguousarray(costs[order]),
        )

    def with_weights_from_costs(self, K: float) -> "Network":
        if not K > 0:
            raise ValueError("K must be positive")
        return Network(self.neuron_count, self.indptr, self.sources, 1.0 - self.costs / K, self.costs)


def graph_to_network(graph: Graph, K: float = 1e6) -> Network:
    if not K > 0:
        raise ValueError("K must be positive")
    return Network.from_connections(graph.node_count, graph.src, graph.dst, 1.0 - graph.cost / K, graph.cost)


def _format_cost(c: float) -> str:
    return str(int(c)) if float(c).is_integer() else repr(float(c))


def write_edge_list(graph: Graph, path) -> None:
    lines = [f"nodes {graph.node_count}"]
    lines += [f"{u} {v} {_format_cost(c)}" for u, v, c in graph.edges]
    Path(path).write_text("\n".join(lines) + "\n", encoding="ascii", newline="\n")


def parse_edge_list(text: str) -> Graph:
    node_count = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if node_count is None:
            if len(parts) != 2 or parts[0] != "nodes":
                raise GraphFormatError(f"line {lineno}: expected header 'nodes N'")
            try:
                node_count = int(parts[1])
            except ValueError:
                raise GraphFormatError(f"line {lineno}: bad node count {parts[1]!r}") from None
            continue
        if len(parts) != 3:
            raise GraphFormatError(f"line {lineno}: expected 'u v cost'")
        try:
            edges.append((int(parts[0]), int(parts[1]), float(parts[2])))
        except ValueError:
            raise GraphFormatError(f"line {lineno}: malformed edge {line!r}") from None
    if node_count is None:
        raise GraphFormatError("missing 'nodes N' header")
    return Graph.from_edges(node_count, edges)


def write_json(graph: Graph, path) -> None:
    Path(path).write_text(json.dumps(graph.to_json_dict()) + "\n", encoding="ascii", newline="\n")


def parse_json(text: str) -> Graph:
    try:
        data = json.loads(text)
        return Graph.from_edges(int(data["nodes"]), [tuple(e) for e in data["edges"]])
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, GraphFormatError):
            raise
        raise GraphFormatError(f"malformed graph JSON: {exc}") from None


def load_graph(path) -> Graph:
    path = Path(path)
    text = path.read_text(encoding="ascii")
    if path.suffix.lower() == ".json":
        return parse_json(text)
    return parse_edge_list(text)


def save_graph(graph: Graph, path) -> None:
    if Path(path).suffix.lower() == ".json":
        write_json(graph, path)
    else:
        write_edge_list(graph, path)
