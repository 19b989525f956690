"""Reference Bellman-Ford solvers: edge relaxation (v1) and node relaxation (v2).

Both use strict ``<`` relaxation, so on exact ties the first predecessor found is
kept. v1 visits edges in the graph's edge-list order; v2 visits vertices in
ascending id and each vertex's incoming edges in edge-list order. Updates are
visible immediately within a sweep for both.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .graph import Graph


class NegativeCycleError(ValueError):
    pass


@dataclass
class ShortestPathResult:
    source: int
    distances: list[float]
    predecessors: list[int | None]
    iterations_used: int
    converged: bool
    negative_cycle_detected: bool = False

    def to_json_dict(self) -> dict:
        return {
            "source": self.source,
            "distances": [d if math.isfinite(d) else ("inf" if d > 0 else "-inf") for d in self.distances],
            "predecessors": self.predecessors,
            "iterations": self.iterations_used,
            "converged": self.converged,
            "negative_cycle": self.negative_cycle_detected,
        }


def sweep_limit(node_count: int) -> int:
    # |V|-1 sweeps, but a single-node graph still gets one (empty) sweep
    return max(node_count - 1, 1)


def _check_source(graph: Graph, source: int) -> None:
    if not 0 <= source < graph.node_count:
        raise ValueError(f"source {source} outside [0, {graph.node_count})")


def _to_optional(ids: np.ndarray) -> list[int | None]:
    return [None if p < 0 else p for p in ids.tolist()]


def incoming_index(graph: Graph) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(indptr, sources, costs) grouping edges by target vertex, edge-list order preserved."""
    order = np.argsort(graph.dst, kind="stable")
    counts = np.bincount(graph.dst, minlength=graph.node_count)
    indptr = np.zeros(graph.node_count + 1, dtype=np.int64)
    np.cumsum(counts, out=indptr[1:])
    return indptr, np.ascontiguousarray(graph.src[order]), np.ascontiguousarray(graph.cost[order])


def _finish(graph, source, dist, pred, sweeps, converged) -> ShortestPathResult:
    result = ShortestPathResult(source, dist.tolist(), _to_optional(pred), int(sweeps), bool(converged))
    if not converged:
        detect_negative_cycle(graph, result)
    return result


def bf_v1(graph: Graph, source: int = 0, early_stop: bool = True, max_sweeps: int | None = None) -> ShortestPathResult:
    _check_source(graph, source)
    limit = sweep_limit(graph.node_count) if max_sweeps is None else max_sweeps
    dist, pred, sweeps, converged = _kernels.bf_edge_sweeps(
        graph.node_count, graph.src, graph.dst, graph.cost, source, limit, early_stop
    )
    return _finish(graph, source, dist, pred, sweeps, converged)


def bf_v2(graph: Graph, source: int = 0, early_stop: bool = True, max_sweeps: int | None = None,
          index=None) -> ShortestPathResult:
    _check_source(graph, source)
    limit = sweep_limit(graph.node_count) if max_sweeps is None else max_sweeps
    indptr, in_src, in_cost = incoming_index(graph) if index is None else index
    dist, pred, sweeps, converged = _kernels.bf_node_sweeps(
        graph.node_count, indptr, in_src, in_cost, source, limit, early_stop
    )
    return _finish(graph, source, dist, pred, sweeps, converged)


def detect_negative_cycle(graph: Graph, result: ShortestPathResult) -> bool:
    """True iff one more full edge sweep would still lower a distance. Sets the result's flag."""
    dist = np.asarray(result.distances, dtype=np.float64)
    found = bool(_kernels.edge_sweep_improves(graph.src, graph.dst, graph.cost, dist))
    if found:
        result.negative_cycle_detected = True
    return found


def walk_back(parents, source: int, target: int) -> list[int] | None:
    """Follow parent pointers from target to source; None when target has no parent."""
    if target == source:
        return [source]
    if parents[target] is None:
        return None
    path = [target]
    node = target
    for _ in range(len(parents)):
        node = parents[node]
        if node is None:
            raise ValueError(f"pointer chain from {target} ends before reaching source {source}")
        path.append(node)
        if node == source:
            path.reverse()
            return path
    raise ValueError(f"cycle in pointer chain from {target}")


def reconstruct_path(result: ShortestPathResult, target: int) -> list[int] | None:
    if result.negative_cycle_detected:
        raise NegativeCycleError("paths are undefined when a negative cycle is reachable")
    return walk_back(result.predecessors, result.source, target)
