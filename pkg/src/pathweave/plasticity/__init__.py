"""Three-factor Hebbian learning on the activation-propagation planner."""

from .navigation import (
    IsolatedLocationError,
    NavEnvironment,
    NavRun,
    Obstacle,
    build_nav_environment,
    make_environment,
    nav_explore_step,
    nav_learning_run,
    plan_path,
)
from .rule import LearningConfig, TransitionEvent, apply_event, hebbian_update, network_from_weights
from .sequence import SequencePlanError, SequenceRun, SequenceTask, seq_learning_run, seq_plan

__all__ = [
    "IsolatedLocationError", "NavEnvironment", "NavRun", "Obstacle", "build_nav_environment",
    "make_environment", "nav_explore_step", "nav_learning_run", "plan_path", "LearningConfig",
    "TransitionEvent", "apply_event", "hebbian_update", "network_from_weights", "SequencePlanError",
    "SequenceRun", "SequenceTask", "seq_learning_run", "seq_plan",
]
