"""Max-product activation propagation (the neural form of Bellman-Ford).

Each neuron takes ``a_i = max_j a_j * w_ij`` over its inputs; the source is
re-clamped to 1 after every sweep. Strict ``>`` keeps the first-found max input
on ties, mirroring the ``<`` tie policy of the Bellman-Ford solvers.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .bellman_ford import sweep_limit, walk_back
from .graph import Graph, Network

DEFAULT_K = 1e6


@dataclass
class ActivationResult:
    source: int
    activations: list[float]
    max_inputs: list[int | None]
    iterations_used: int
    converged: bool

    def to_json_dict(self) -> dict:
        return {
            "source": self.source,
            "activations": self.activations,
            "max_inputs": self.max_inputs,
            "iterations": self.iterations_used,
            "converged": self.converged,
        }


def nnbf_solve(network: Network, source: int = 0, early_stop: bool = True,
               max_sweeps: int | None = None) -> ActivationResult:
    if not 0 <= source < network.neuron_count:
        raise ValueError(f"source {source} outside [0, {network.neuron_count})")
    limit = sweep_limit(network.neuron_count) if max_sweeps is None else max_sweeps
    act, max_in, sweeps, converged = _kernels.activation_sweeps(
        network.neuron_count, network.indptr, network.sources, network.weights, source, limit, early_stop
    )
    return ActivationResult(
        source,
        act.tolist(),
        [None if j < 0 else j for j in max_in.tolist()],
        int(sweeps),
        bool(converged),
    )


def reconstruct_path_from_max_inputs(result: ActivationResult, target: int) -> list[int] | None:
    if target != result.source and result.activations[target] == 0:
        return None
    return walk_back(result.max_inputs, result.source, target)


def path_cost(graph: Graph, path: list[int]) -> float:
    """Sum of original edge costs along ``path``, accumulated from the source end."""
    total = 0.0
    for u, v in zip(path, path[1:]):
        try:
            total += graph.edge_cost(u, v)
        except KeyError:
            raise ValueError(f"path uses missing edge {u} -> {v}") from None
    return total


def tree_path_costs(graph: Graph, parents, source: int) -> np.ndarray:
    """Cost of the parent-pointer path to every node (inf where there is none).

    Equivalent to ``path_cost(graph, walk_back(...))`` per node, but shares
    prefixes. Sums run source-first, in the same order Bellman-Ford accumulates
    them. Raises ValueError on pointer cycles or pointers along missing edges.
    """
    n = graph.node_count
    parents = np.array([-1 if p is None else p for p in parents], dtype=np.int64)
    has_parent = parents >= 0
    has_parent[source] = False
    edge_costs = np.zeros(n)
    idx = np.nonzero(has_parent)[0]
    if idx.size:
        try:
            edge_costs[idx] = graph.edge_cost(parents[idx], idx)
        except KeyError as exc:
            raise ValueError(f"pointer along missing edge: {exc}") from None
    costs = np.full(n, np.nan)
    costs[source] = 0.0
    costs[~has_parent & (np.arange(n) != source)] = np.inf
    for v in range(n):
        if not np.isnan(costs[v]):
            continue
        chain = []
        node = v
        while np.isnan(costs[node]):
            chain.append(node)
            if len(chain) > n:
                raise ValueError(f"cycle in pointer chain from {v}")
            node = parents[node]
        base = costs[node]
        for w in reversed(chain):
            base = base + edge_costs[w]
            costs[w] = base
    return costs
