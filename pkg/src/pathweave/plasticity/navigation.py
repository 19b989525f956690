"""Grid navigation: jittered locations, obstacle-aware transitions, explore-and-learn runs."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace

import numpy as np

from ..bellman_ford import walk_back
from ..nnbf import nnbf_solve
from .rule import LearningConfig, TransitionEvent, apply_event, network_from_weights, weights_digest


class IsolatedLocationError(RuntimeError):
    pass


@dataclass(frozen=True)
class Obstacle:
    """Axis-aligned rectangle [x0, x1] x [y0, y1]."""

    x0: float
    y0: float
    x1: float
    y1: float

    def blocks(self, p, q) -> bool:
        return segment_hits_rect(p, q, self)


def segment_hits_rect(p, q, rect: Obstacle) -> bool:
    # Liang-Barsky clipping of the segment p->q against the rectangle
    (px, py), (qx, qy) = p, q
    dx, dy = qx - px, qy - py
    t0, t1 = 0.0, 1.0
    for edge_p, edge_q in ((-dx, px - rect.x0), (dx, rect.x1 - px), (-dy, py - rect.y0), (dy, rect.y1 - py)):
        if edge_p == 0:
            if edge_q < 0:
                return False
            continue
        t = edge_q / edge_p
        if edge_p < 0:
            t0 = max(t0, t)
        else:
            t1 = min(t1, t)
        if t0 > t1:
            return False
    return True


def grid_index(i: int, j: int, m: int) -> int:
    """Location id for 1-based grid coordinates (i along x, j along y)."""
    return (j - 1) * m + (i - 1)


@dataclass(frozen=True, eq=False)
class NavEnvironment:
    grid_m: int
    spacing: float
    noise: tuple[float, float]
    positions: np.ndarray
    obstacles: tuple[Obstacle, ...]
    theta_d: float
    seed: int
    candidate_edges: tuple[tuple[int, int], ...] = field(default=())

    def __post_init__(self):
        if not self.candidate_edges:
            object.__setattr__(self, "candidate_edges", _candidate_edges(self.positions, self.theta_d, self.obstacles))
        nbrs: list[list[int]] = [[] for _ in range(self.location_count)]
        for k, l in self.candidate_edges:
            nbrs[k].append(l)
            nbrs[l].append(k)
        object.__setattr__(self, "_neighbors", [sorted(x) for x in nbrs])

    @property
    def location_count(self) -> int:
        return self.grid_m * self.grid_m

    @property
    def start(self) -> int:
        return 0

    @property
    def goal(self) -> int:
        return self.location_count - 1

    def neighbors(self, k: int) -> list[int]:
        return self._neighbors[k]

    def distance(self, k: int, l: int) -> float:
        return float(math.dist(self.positions[k], self.positions[l]))

    def directed_pairs(self) -> list[tuple[int, int]]:
        out = []
        for k, l in self.candidate_edges:
            out += [(k, l), (l, k)]
        return out

    def path_length(self, path) -> float:
        return sum(self.distance(a, b) for a, b in zip(path, path[1:]))

    def without_obstacles(self, obstacles=()) -> "NavEnvironment":
        """Same locations, candidate edges re-derived for a new obstacle set."""
        return replace(self, obstacles=tuple(obstacles), candidate_edges=())

    def to_json_dict(self) -> dict:
        return {
            "grid_m": self.grid_m,
            "spacing": self.spacing,
            "noise": list(self.noise),
            "positions": self.positions.tolist(),
            "obstacles": [[o.x0, o.y0, o.x1, o.y1] for o in self.obstacles],
            "theta_d": self.theta_d,
            "seed": self.seed,
            "candidate_edges": [list(e) for e in self.candidate_edges],
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "NavEnvironment":
        return cls(
            d["grid_m"], d["spacing"], tuple(d["noise"]), np.asarray(d["positions"], dtype=float),
            tuple(Obstacle(*o) for o in d["obstacles"]), d["theta_d"], d["seed"],
        )


def _candidate_edges(positions, theta_d, obstacles):
    edges = []
    n = len(positions)
    for k in range(n):
        for l in range(k + 1, n):
            p, q = positions[k], positions[l]
            if math.dist(p, q) <= theta_d and not any(o.blocks(p, q) for o in obstacles):
                edges.append((k, l))
    return tuple(edges)


def jittered_grid(m: int, h: float, noise: tuple[float, float], rng: np.random.Generator) -> np.ndarray:
    a, b = noise
    pos = np.empty((m * m, 2))
    for j in range(1, m + 1):
        for i in range(1, m + 1):
            xi = rng.uniform(a, b, size=2) if b > a else np.full(2, a)
            pos[grid_index(i, j, m)] = (h * i + xi[0], h * j + xi[1])
    return pos


def make_environment(m=5, h=0.2, noise=(-0.05, 0.05), theta_d=0.25, obstacles=(), seed=0) -> NavEnvironment:
    rng = np.random.default_rng(seed)
    positions = jittered_grid(m, h, noise, rng)
    return NavEnvironment(m, h, tuple(noise), positions, tuple(obstacles), theta_d, seed)


def _box(x, y, half=0.05) -> Obstacle:
    return Obstacle(x - half, y - half, x + half, y + half)


# Small boxes sitting on the midpoints of single grid links.
STATIC_OBSTACLES = (_box(0.5, 0.4), _box(0.4, 0.7), _box(0.7, 0.5), _box(0.6, 0.8))
# One long, thin wall across the middle with a gap at the right edge.
DYNAMIC_OBSTACLE = Obstacle(0.1, 0.48, 0.85, 0.52)
SCENARIOS = {
    "static": dict(theta_d=0.25, obstacles=STATIC_OBSTACLES),
    "dynamic": dict(theta_d=0.35, obstacles=(DYNAMIC_OBSTACLE,)),
}


def build_nav_environment(scenario: str = "static", seed: int = 0, **overrides) -> NavEnvironment:
    if scenario not in SCENARIOS:
        raise ValueError(f"unknown scenario {scenario!r}; expected one of {sorted(SCENARIOS)}")
    kwargs = dict(SCENARIOS[scenario])
    kwargs.update(overrides)
    return make_environment(seed=seed, **kwargs)


def nav_explore_step(env: NavEnvironment, current: int, rng: np.random.Generator, beta: float = 1.0) -> TransitionEvent:
    nbrs = env.neighbors(current)
    if not nbrs:
        raise IsolatedLocationError(f"location {current} has no feasible neighbour")
    nxt = nbrs[int(rng.integers(len(nbrs)))]
    return TransitionEvent(current, nxt, 1.0 - beta * env.distance(current, nxt))


def plan_path(env: NavEnvironment, weights: np.ndarray) -> list[int] | None:
    """Plan start -> goal over the current candidate connections, without external input."""
    net = network_from_weights(weights, env.directed_pairs())
    res = nnbf_solve(net, env.start)
    if res.activations[env.goal] == 0:
        return None
    return walk_back(res.max_inputs, env.start, env.goal)


@dataclass
class NavSnapshot:
    iteration: int
    planned_path: list[int] | None
    path_euclidean_length: float | None
    weights_digest: str
    weights: list[list[float]] | None = None

    def to_json(self) -> str:
        d = {
            "iteration": self.iteration,
            "planned_path": self.planned_path,
            "path_euclidean_length": self.path_euclidean_length,
            "weights_digest": self.weights_digest,
        }
        if self.weights is not None:
            d["weights"] = self.weights
        return json.dumps(d)


@dataclass
class NavRun:
    snapshots: list[NavSnapshot]
    weights: np.ndarray
    env: NavEnvironment

    def path_at(self, iteration: int) -> list[int] | None:
        for s in self.snapshots:
            if s.iteration == iteration:
                return s.planned_path
        raise KeyError(iteration)


def nav_learning_run(env: NavEnvironment, config: LearningConfig | None = None, total_iterations: int = 2000,
                     obstacle_removal_at: int | None = None, seed: int = 0,
                     keep_weights: bool = False) -> NavRun:
    config = config or LearningConfig()
    rng = np.random.default_rng(seed)
    n = env.location_count
    weights = np.zeros((n, n))
    current = env.start
    snapshots = []

    def snap(t):
        path = plan_path(env, weights)
        snapshots.append(NavSnapshot(
            t, path, None if path is None else env.path_length(path), weights_digest(weights),
            weights.tolist() if keep_weights else None,
        ))

    snap(0)
    for t in range(1, total_iterations + 1):
        if obstacle_removal_at is not None and t == obstacle_removal_at + 1:
            env = env.without_obstacles()
        try:
            event = nav_explore_step(env, current, rng, config.beta)
        except IsolatedLocationError:
            current = env.start
            event = nav_explore_step(env, current, rng, config.beta)
        apply_event(weights, event, config)
        current = event.post
        if t % config.plan_interval == 0 or t == total_iterations:
            snap(t)
    return NavRun(snapshots, weights, env)
