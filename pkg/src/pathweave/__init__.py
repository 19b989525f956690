"""Bellman-Ford, its max-product neural reformulation, and Hebbian path learning."""

__version__ = "0.1.0"
