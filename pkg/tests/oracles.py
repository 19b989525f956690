"""Independent reference solvers used only by the tests."""

import heapq
import math

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import dijkstra as sp_dijkstra


def brute_force_distances(node_count, edges, source=0):
    """Minimum cost over every simple path from ``source``; exhaustive DFS."""
    out = {}
    for u, v, c in edges:
        out.setdefault(u, []).append((v, c))
    best = [math.inf] * node_count
    best[source] = 0.0
    visited = [False] * node_count

    def dfs(u, acc):
        visited[u] = True
        for v, c in out.get(u, ()):
            if not visited[v]:
                best[v] = min(best[v], acc + c)
                dfs(v, acc + c)
        visited[u] = False

    dfs(source, 0.0)
    return best


def has_negative_cycle(node_count, edges):
    """Floyd-Warshall diagonal check over the whole graph."""
    d = np.full((node_count, node_count), math.inf)
    np.fill_diagonal(d, 0.0)
    for u, v, c in edges:
        d[u, v] = min(d[u, v], c)
    for k in range(node_count):
        d = np.minimum(d, d[:, [k]] + d[[k], :])
    return bool((np.diag(d) < 0).any())


def heap_dijkstra(node_count, edges, source=0):
    out = {}
    for u, v, c in edges:
        assert c >= 0
        out.setdefault(u, []).append((v, c))
    dist = [math.inf] * node_count
    dist[source] = 0.0
    heap = [(0.0, source)]
    while heap:
        d, u = heapq.heappop(heap)
        if d > dist[u]:
            continue
        for v, c in out.get(u, ()):
            if d + c < dist[v]:
                dist[v] = d + c
                heapq.heappush(heap, (dist[v], v))
    return dist


def scipy_distances(graph, source=0):
    m = csr_matrix((graph.cost, (graph.src, graph.dst)), shape=(graph.node_count, graph.node_count))
    return sp_dijkstra(m, directed=True, indices=source)


def nav_oracle_length(env):
    """Euclidean shortest start->goal length over the environment's candidate edges."""
    n = env.location_count
    rows, cols, vals = [], [], []
    for k, l in env.directed_pairs():
        rows.append(k)
        cols.append(l)
        vals.append(env.distance(k, l))
    m = csr_matrix((vals, (rows, cols)), shape=(n, n))
    return float(sp_dijkstra(m, directed=True, indices=env.start)[env.goal])
