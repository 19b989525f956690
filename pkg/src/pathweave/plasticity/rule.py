from __future__ import annotations

import hashlib
from dataclasses import dataclass

import numpy as np

from ..graph import Network


@dataclass(frozen=True)
class LearningConfig:
    alpha: float = 0.02
    beta: float = 1.0
    weight_min: float = 0.0
    # "0 <= w < 1" realised as a clamp just below one
    weight_max: float = 1.0 - 1e-6
    plan_interval: int = 100

    def __post_init__(self):
        if not self.alpha > 0:
            raise ValueError("alpha must be positive")
        if not 0 <= self.weight_min < self.weight_max < 1:
            raise ValueError("need 0 <= weight_min < weight_max < 1")
        if self.plan_interval <= 0:
            raise ValueError("plan_interval must be positive")


@dataclass(frozen=True)
class TransitionEvent:
    """One learning transition. External input is 1 on ``pre`` and ``post`` only."""

    pre: int
    post: int
    reward: float

    def __post_init__(self):
        if self.pre == self.post:
            raise ValueError("pre and post must differ")

    def external_input(self, neuron_count: int) -> np.ndarray:
        i_e = np.zeros(neuron_count, dtype=np.int8)
        i_e[[self.pre, self.post]] = 1
        return i_e


def hebbian_update(w: float, o_pre: float, o_post: float, reward: float, config: LearningConfig) -> float:
    """Three-factor rule ``w + alpha * o_pre * o_post * R``, clamped to the weight bounds."""
    return min(max(w + config.alpha * o_pre * o_post * reward, config.weight_min), config.weight_max)


def apply_event(weights: np.ndarray, event: TransitionEvent, config: LearningConfig) -> None:
    """Update ``weights[pre, post]`` in place.

    While an event is active its external input drives both neurons, so their
    outputs are taken as 1 and the change reduces to ``alpha * R``.
    """
    i_e = event.external_input(weights.shape[0])
    o_pre = float(i_e[event.pre])
    o_post = float(i_e[event.post])
    weights[event.pre, event.post] = hebbian_update(
        weights[event.pre, event.post], o_pre, o_post, event.reward, config
    )


def network_from_weights(weights: np.ndarray, pairs=None) -> Network:
    """Planning network over a ``weights[pre, post]`` matrix.

    ``pairs`` restricts it to the given directed (pre, post) connections; by
    default every off-diagonal entry is a connection.
    """
    n = weights.shape[0]
    if pairs is None:
        pre, post = np.nonzero(~np.eye(n, dtype=bool))
    else:
        pairs = np.asarray(pairs, dtype=np.int64).reshape(-1, 2)
        pre, post = pairs[:, 0], pairs[:, 1]
    return Network.from_connections(n, pre, post, weights[pre, post])


def weights_digest(weights: np.ndarray) -> str:
    return hashlib.sha256(np.ascontiguousarray(weights, dtype=np.float64).tobytes()).hexdigest()[:16]
