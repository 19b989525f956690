# Compiled sweep loops. Predecessor / max-input "none" is encoded as -1 here and
# converted to None at the Python boundary.
import numpy as np
from numba import njit


@njit(cache=True)
def bf_edge_sweeps(n, src, dst, cost, source, max_sweeps, early_stop):
    dist = np.full(n, np.inf)
    pred = np.full(n, -1, dtype=np.int64)
    dist[source] = 0.0
    sweeps = 0
    converged = False
    m = src.shape[0]
    for _ in range(max_sweeps):
        changed = False
        for e in range(m):
            u = src[e]
            v = dst[e]
            nd = dist[u] + cost[e]
            if nd < dist[v]:
                dist[v] = nd
                pred[v] = u
                changed = True
        sweeps += 1
        if not changed:
            converged = True
            if early_stop:
                break
    return dist, pred, sweeps, converged


@njit(cache=True)
def bf_node_sweeps(n, indptr, in_src, in_cost, source, max_sweeps, early_stop):
    dist = np.full(n, np.inf)
    pred = np.full(n, -1, dtype=np.int64)
    dist[source] = 0.0
    sweeps = 0
    converged = False
    for _ in range(max_sweeps):
        changed = False
        for v in range(n):
            if v == source:
                continue
            for k in range(indptr[v], indptr[v + 1]):
                u = in_src[k]
                nd = dist[u] + in_cost[k]
                if nd < dist[v]:
                    dist[v] = nd
                    pred[v] = u
                    changed = True
        sweeps += 1
        if not changed:
            converged = True
            if early_stop:
                break
    return dist, pred, sweeps, converged


@njit(cache=True)
def edge_sweep_improves(src, dst, cost, dist):
    for e in range(src.shape[0]):
        if dist[src[e]] + cost[e] < dist[dst[e]]:
            return True
    return False


@njit(cache=True)
def activation_sweeps(n, indptr, sources, weights, source, max_sweeps, early_stop):
    act = np.zeros(n)
    max_in = np.full(n, -1, dtype=np.int64)
    act[source] = 1.0
    sweeps = 0
    converged = False
    for _ in range(max_sweeps):
        changed = False
        for i in range(n):
            for k in range(indptr[i], indptr[i + 1]):
                x = act[sources[k]] * weights[k]
                if x > act[i]:
                    act[i] = x
                    max_in[i] = sources[k]
                    changed = True
        act[source] = 1.0
        sweeps += 1
        if not changed:
            converged = True
            if early_stop:
                break
    return act, max_in, sweeps, converged
