"""Empirical equivalence checks between Bellman-Ford and activation propagation.

Covers path-pair contrast and minimal-K search, graph-level K scans on a ladder,
sweep counts until convergence, and per-sweep runtime scaling. Every work item
draws from its own generator seeded with ``base seed + item index`` and results
are merged in index order, so outputs do not depend on the worker count.
"""

from __future__ import annotations

import math
import statistics
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from . import _kernels
from .bellman_ford import bf_v1, incoming_index, sweep_limit
from .graph import GeneratorConfig, generate_random_graph, graph_to_network
from .nnbf import DEFAULT_K, nnbf_solve, tree_path_costs

FULL_LENGTHS = (2, 3, 4, 5, 6, 7, 8, 10, 20, 30, 40, 50, 100, 200)
DEFAULT_K_LADDER = (1e1, 1e2, 1e3, 1e4, 1e5, 1e6)


def parallel_map(fn, items, workers: int = 1) -> list:
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items, chunksize=max(1, len(items) // (4 * workers))))


# -- path pairs ---------------------------------------------------------------

@dataclass(frozen=True)
class PathPair:
    costs_a: tuple[float, ...]
    costs_b: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "costs_a", tuple(float(c) for c in self.costs_a))
        object.__setattr__(self, "costs_b", tuple(float(c) for c in self.costs_b))

    @property
    def sum_a(self) -> float:
        return math.fsum(self.costs_a)

    @property
    def sum_b(self) -> float:
        return math.fsum(self.costs_b)

    def padded(self) -> tuple[list[float], list[float]]:
        # zero-cost dummy edges (weight exactly 1) equalise the lengths
        n = max(len(self.costs_a), len(self.costs_b))
        return (list(self.costs_a) + [0.0] * (n - len(self.costs_a)),
                list(self.costs_b) + [0.0] * (n - len(self.costs_b)))


@dataclass(frozen=True)
class K0Record:
    contrast: float
    k0: float
    lengths: tuple[int, int]
    seed: int


@dataclass(frozen=True)
class PairExperimentConfig:
    length_set: tuple[int, ...] = FULL_LENGTHS
    trials_per_combination: int = 60
    cost_mean_range: tuple[float, float] = (1.0, 21.0)
    cost_sigma_range: tuple[float, float] = (0.0, 5.0)
    seed: int = 0
    k_max: float = 1e12

    def __post_init__(self):
        if not self.length_set or min(self.length_set) < 1:
            raise ValueError("length_set must hold positive lengths")
        if self.trials_per_combination < 1:
            raise ValueError("trials_per_combination must be positive")
        for lo, hi in (self.cost_mean_range, self.cost_sigma_range):
            if lo > hi:
                raise ValueError("empty range")
        if self.cost_sigma_range[0] < 0:
            raise ValueError("sigma must be non-negative")

    @classmethod
    def from_dict(cls, d: dict) -> "PairExperimentConfig":
        d = dict(d)
        for key in ("length_set", "cost_mean_range", "cost_sigma_range"):
            if key in d:
                d[key] = tuple(d[key])
        return cls(**d)

    def to_dict(self) -> dict:
        return {k: list(v) if isinstance(v, tuple) else v for k, v in asdict(self).items()}


def contrast(pair: PathPair) -> float:
    total = pair.sum_a + pair.sum_b
    if total == 0:
        raise ZeroDivisionError("contrast undefined when the summed costs cancel")
    return (pair.sum_a - pair.sum_b) / total


def products_ordered_correctly(pair: PathPair, K: float) -> bool:
    """True iff the path with the smaller cost sum also has the strictly larger weight product."""
    sa, sb = pair.sum_a, pair.sum_b
    if sa == sb:
        return False
    a, b = pair.padded()
    prod_a = math.prod(1.0 - c / K for c in a)
    prod_b = math.prod(1.0 - c / K for c in b)
    return prod_a > prod_b if sa < sb else prod_b > prod_a


def k0_floor(pair: PathPair) -> float:
    # below the largest cost some weight is <= 0 and products stop meaning anything
    return max(1.0, 1.01 * max(abs(c) for c in pair.costs_a + pair.costs_b))


def find_k0(pair: PathPair, k_max: float = 1e12, rel_tol: float = 1e-3) -> K0Record | None:
    """Smallest K from which the product ordering matches the sum ordering.

    Ordering is not known to be monotone in K, so every rung of a doubling ladder
    from the floor to ``k_max`` is checked; K0 is bracketed between the highest
    failing rung and the rung above it and refined by bisection.
    """
    if pair.sum_a == pair.sum_b:
        return None
    floor = k0_floor(pair)
    if floor > k_max:
        return None
    ladder = []
    k = floor
    while k <= k_max:
        ladder.append(k)
        k *= 2.0
    ok = [products_ordered_correctly(pair, k) for k in ladder]
    if not ok[-1]:
        return None
    failing = [i for i, good in enumerate(ok) if not good]
    if not failing:
        k0 = floor
    else:
        lo, hi = ladder[failing[-1]], ladder[failing[-1] + 1]
        while hi / lo > 1.0 + rel_tol:
            mid = math.sqrt(lo * hi)
            if products_ordered_correctly(pair, mid):
                hi = mid
            else:
                lo = mid
        k0 = hi
    return K0Record(contrast(pair), k0, (len(pair.costs_a), len(pair.costs_b)), 0)


def _pair_trial(args):
    la, lb, seed, cfg = args
    rng = np.random.default_rng(seed)
    m_a, m_b = rng.uniform(*cfg.cost_mean_range, size=2)
    s_a, s_b = rng.uniform(*cfg.cost_sigma_range, size=2)
    pair = PathPair(rng.normal(m_a, s_a, la), rng.normal(m_b, s_b, lb))
    if pair.sum_a == pair.sum_b or pair.sum_a + pair.sum_b == 0:
        return None
    rec = find_k0(pair, cfg.k_max)
    k0 = math.inf if rec is None else rec.k0
    return K0Record(contrast(pair), k0, (la, lb), seed)


def pair_experiment(config: PairExperimentConfig, workers: int = 1) -> list[K0Record]:
    """Every ordered (L_A, L_B) combination times ``trials_per_combination`` Gaussian path pairs.

    Pairs whose sums tie exactly are dropped; a pair with no K0 up to ``k_max``
    is reported with k0 = inf.
    """
    items = []
    idx = 0
    for la in config.length_set:
        for lb in config.length_set:
            for _ in range(config.trials_per_combination):
                items.append((la, lb, config.seed + idx, config))
                idx += 1
    return [r for r in parallel_map(_pair_trial, items, workers) if r is not None]


# -- graph families -----------------------------------------------------------

@dataclass(frozen=True)
class Family:
    """``graphs`` random graphs drawn from ``config``; graph i uses seed config.seed + i."""

    config: GeneratorConfig
    graphs: int = 100
    label: str = ""

    def graph_configs(self):
        return [self.config.with_seed(self.config.seed + i) for i in range(self.graphs)]

    @property
    def name(self) -> str:
        if self.label:
            return self.label
        c = self.config
        return f"n{c.node_count}_p{c.edge_prob:g}_c{c.pos_cost_range[1]:g}"

    def to_dict(self) -> dict:
        return {"config": self.config.to_dict(), "graphs": self.graphs, "label": self.label}

    @classmethod
    def from_dict(cls, d: dict) -> "Family":
        return cls(GeneratorConfig.from_dict(d["config"]), int(d.get("graphs", 100)), d.get("label", ""))


def nnbf_matches_bf(graph, network, bf_distances, source: int = 0) -> bool:
    """Every node's max-input path costs exactly its Bellman-Ford distance."""
    res = nnbf_solve(network, source)
    try:
        costs = tree_path_costs(graph, res.max_inputs, source)
    except ValueError:
        return False
    return bool(np.array_equal(costs, bf_distances))


def graph_k0(graph, k_ladder=DEFAULT_K_LADDER, source: int = 0) -> float | None:
    """Smallest ladder K from which NN-BF path costs equal BF distances on every higher rung too."""
    bf = bf_v1(graph, source)
    if bf.negative_cycle_detected:
        raise ValueError("graph has a negative cycle reachable from the source")
    dist = np.asarray(bf.distances)
    base = graph_to_network(graph, 1.0)
    k0 = None
    for K in sorted(k_ladder, reverse=True):
        if not nnbf_matches_bf(graph, base.with_weights_from_costs(K), dist, source):
            break
        k0 = K
    return k0


def _graph_k0_item(args):
    cfg_dict, ladder = args
    cfg = GeneratorConfig.from_dict(cfg_dict)
    k0 = graph_k0(generate_random_graph(cfg), ladder)
    return math.inf if k0 is None else k0


@dataclass
class GraphK0Result:
    family: Family
    k0s: list[float] = field(default_factory=list)

    @property
    def max_k0(self) -> float:
        return max(self.k0s) if self.k0s else math.nan


def graph_k0_scan(families, k_ladder=DEFAULT_K_LADDER, workers: int = 1) -> list[GraphK0Result]:
    for fam in families:
        if fam.config.neg_prob > 0:
            raise ValueError("graph K0 scans use positive-cost families only")
    items, owners = [], []
    for fi, fam in enumerate(families):
        for cfg in fam.graph_configs():
            items.append((cfg.to_dict(), tuple(k_ladder)))
            owners.append(fi)
    out = [GraphK0Result(f) for f in families]
    for fi, k0 in zip(owners, parallel_map(_graph_k0_item, items, workers)):
        out[fi].k0s.append(k0)
    return out


def sweeps_to_converge(result) -> int:
    """Sweeps after which values stopped changing, i.e. without the confirming no-change sweep.

    A run always does at least one sweep, so the count never drops below 1.
    Non-converged runs report every sweep they made.
    """
    if not result.converged:
        return result.iterations_used
    return max(1, result.iterations_used - 1)


def _convergence_item(args):
    cfg_dict, K = args
    graph = generate_random_graph(GeneratorConfig.from_dict(cfg_dict))
    bf = bf_v1(graph, 0, early_stop=True)
    nn = nnbf_solve(graph_to_network(graph, K), 0, early_stop=True)
    return graph.edge_count, sweeps_to_converge(bf), sweeps_to_converge(nn)


@dataclass
class ConvergenceResult:
    family: Family
    edges: list[int] = field(default_factory=list)
    bf_iterations: list[int] = field(default_factory=list)
    nnbf_iterations: list[int] = field(default_factory=list)

    @property
    def mean_edges(self) -> float:
        return statistics.fmean(self.edges) if self.edges else 0.0

    def max_iterations(self, solver: str) -> int:
        return max(self.iterations(solver))

    def iterations(self, solver: str) -> list[int]:
        return {"bf1": self.bf_iterations, "nnbf": self.nnbf_iterations}[solver]

    def histogram(self, solver: str) -> dict[int, int]:
        return dict(sorted(Counter(self.iterations(solver)).items()))


def convergence_experiment(families, K: float = DEFAULT_K, workers: int = 1) -> list[ConvergenceResult]:
    """Sweeps until convergence (see ``sweeps_to_converge``) for BF v1 and NN-BF on each graph."""
    items, owners = [], []
    for fi, fam in enumerate(families):
        for cfg in fam.graph_configs():
            items.append((cfg.to_dict(), K))
            owners.append(fi)
    out = [ConvergenceResult(f) for f in families]
    for fi, (m, b, n) in zip(owners, parallel_map(_convergence_item, items, workers)):
        out[fi].edges.append(m)
        out[fi].bf_iterations.append(b)
        out[fi].nnbf_iterations.append(n)
    return out


@dataclass
class RuntimeResult:
    family: Family
    solver: str
    edges: float
    per_sweep_seconds: list[float]

    @property
    def mean(self) -> float:
        return statistics.fmean(self.per_sweep_seconds)

    @property
    def stddev(self) -> float:
        return statistics.stdev(self.per_sweep_seconds) if len(self.per_sweep_seconds) > 1 else 0.0


def _time_sweeps(fn, args, sweeps: int) -> float:
    t0 = time.perf_counter()
    fn(*args)
    return (time.perf_counter() - t0) / sweeps


def runtime_benchmark(families, sweeps: int = 10, repeats: int = 5, warmup: int = 2,
                      K: float = DEFAULT_K) -> list[RuntimeResult]:
    """Mean wall time per full sweep (no early stop), graph construction excluded.

    Runs in-process on a single worker so timings are not perturbed by siblings.
    """
    results = []
    for fam in families:
        samples = {"bf1": [], "bf2": [], "nnbf": []}
        edges = []
        for cfg in fam.graph_configs():
            g = generate_random_graph(cfg)
            edges.append(g.edge_count)
            n = g.node_count
            s = min(sweeps, sweep_limit(n))
            indptr, in_src, in_cost = incoming_index(g)
            net = graph_to_network(g, K)
            calls = {
                "bf1": (_kernels.bf_edge_sweeps, (n, g.src, g.dst, g.cost, 0, s, False)),
                "bf2": (_kernels.bf_node_sweeps, (n, indptr, in_src, in_cost, 0, s, False)),
                "nnbf": (_kernels.activation_sweeps, (n, net.indptr, net.sources, net.weights, 0, s, False)),
            }
            for solver, (fn, args) in calls.items():
                for _ in range(warmup):
                    fn(*args)
                samples[solver] += [_time_sweeps(fn, args, s) for _ in range(repeats)]
        for solver, vals in samples.items():
            results.append(RuntimeResult(fam, solver, statistics.fmean(edges), vals))
    return results


def loglog_slope(xs, ys) -> float:
    """Least-squares slope of log(y) against log(x)."""
    return float(np.polyfit(np.log(xs), np.log(ys), 1)[0])
