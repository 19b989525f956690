"""Event-sequence learning on a fully connected planning network."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..bellman_ford import walk_back
from ..nnbf import nnbf_solve
from .rule import LearningConfig, TransitionEvent, apply_event, network_from_weights, weights_digest


class SequencePlanError(RuntimeError):
    pass


@dataclass(frozen=True)
class SequenceTask:
    target: str = "ABCDEF"
    alphabet: str = "ABCDEF"
    init_weight_range: tuple[float, float] = (0.0, 0.5)
    alpha: float = 0.9
    seed: int = 0
    epoch_cap: int = 200

    def __post_init__(self):
        alphabet, target = self.alphabet, self.target
        if len(set(alphabet)) != len(alphabet) or len(alphabet) < 2:
            raise ValueError("alphabet needs at least two distinct events")
        bad = [c for c in target if c not in alphabet]
        if bad:
            raise ValueError(f"events {''.join(bad)!r} not in alphabet {alphabet!r}")
        if len(target) < 2 or target[0] != alphabet[0] or target[-1] != alphabet[-1]:
            raise ValueError(f"target must start with {alphabet[0]!r} and end with {alphabet[-1]!r}")
        ranks = [alphabet.index(c) for c in target]
        if any(b <= a for a, b in zip(ranks, ranks[1:])):
            raise ValueError("target events must follow alphabet order without repeats")

    @property
    def start(self) -> int:
        return 0

    @property
    def end(self) -> int:
        return len(self.alphabet) - 1

    @property
    def correct_pairs(self) -> set[tuple[int, int]]:
        ids = [self.alphabet.index(c) for c in self.target]
        return set(zip(ids, ids[1:]))

    def config(self) -> LearningConfig:
        return LearningConfig(alpha=self.alpha)

    def initial_weights(self) -> np.ndarray:
        n = len(self.alphabet)
        rng = np.random.default_rng(self.seed)
        w = rng.uniform(*self.init_weight_range, size=(n, n))
        np.fill_diagonal(w, 0.0)
        return w


def seq_plan(weights: np.ndarray, task: SequenceTask) -> str:
    """Plan start -> end on the current weights (no external input) and spell it out."""
    res = nnbf_solve(network_from_weights(weights), task.start)
    if res.activations[task.end] == 0:
        raise SequencePlanError("end event receives no activation")
    path = walk_back(res.max_inputs, task.start, task.end)
    return "".join(task.alphabet[i] for i in path)


@dataclass
class SequenceRun:
    task: SequenceTask
    sequences: list[str] = field(default_factory=list)
    digests: list[str] = field(default_factory=list)
    converged: bool = False

    @property
    def epochs(self) -> int:
        """Learning epochs performed before the plan matched the target (or the cap)."""
        return len(self.sequences) - 1


def seq_learning_run(task: SequenceTask, weights: np.ndarray | None = None) -> SequenceRun:
    """Plan, then reward each executed pair: +1 if it is adjacent in the target, else -1.

    Epoch 0 is the plan from the initial weights. Stops as soon as a plan equals
    the target, or after ``task.epoch_cap`` learning epochs.
    """
    config = task.config()
    weights = task.initial_weights() if weights is None else weights
    correct = task.correct_pairs
    run = SequenceRun(task)
    for epoch in range(task.epoch_cap + 1):
        seq = seq_plan(weights, task)
        run.sequences.append(seq)
        run.digests.append(weights_digest(weights))
        if seq == task.target:
            run.converged = True
            break
        if epoch == task.epoch_cap:
            break
        ids = [task.alphabet.index(c) for c in seq]
        for pre, post in zip(ids, ids[1:]):
            reward = 1.0 if (pre, post) in correct else -1.0
            apply_event(weights, TransitionEvent(pre, post, reward), config)
    return run
