"""Named experiment configurations: full scale (``*-full``) and desk scale (``*-desk``)."""

from .equivalence import FULL_LENGTHS, PairExperimentConfig


def _family(nodes, p, cost_max, graphs, seed=0, integer=True):
    return {
        "config": {
            "node_count": nodes, "edge_prob": p, "pos_cost_range": [1, cost_max],
            "neg_cost_range": [-10, -1], "neg_prob": 0.0, "seed": seed, "integer_costs": integer,
        },
        "graphs": graphs,
        "label": "",
    }


def _fig4_full():
    heavy = {(500, 0.05, 1000), (500, 0.1, 1000), (1000, 0.05, 1000)}
    return [
        _family(n, p, c, 10_000 if (n, p, c) in heavy else 1000)
        for n in (500, 1000, 2000) for p in (0.05, 0.1, 0.5, 1.0) for c in (10, 100, 1000)
    ]


# K0 scans compare path sums exactly, so they keep integer costs. Convergence runs draw
# real costs: integer ties let max-product keep refining equal-cost routes for extra sweeps.

# edge counts of the 5000-node convergence study, turned into connection probabilities
_FIG5_EDGES = (12.5e3, 25e3, 250e3, 2.5e6, 12.5e6, 24.995e6)

PRESETS = {
    "fig3-full": ("pairs", PairExperimentConfig(length_set=FULL_LENGTHS, trials_per_combination=60).to_dict()),
    "fig3-desk": ("pairs", PairExperimentConfig(length_set=(2, 5, 10, 20, 50), trials_per_combination=20).to_dict()),
    "fig4-full": ("k0scan", {"families": _fig4_full(), "k_ladder": [1e1, 1e2, 1e3, 1e4, 1e5, 1e6]}),
    "fig4-desk": ("k0scan", {
        "families": [_family(n, p, c, 100) for n in (100, 500) for p in (0.05, 1.0) for c in (10, 1000)],
        "k_ladder": [1e1, 1e2, 1e3, 1e4, 1e5, 1e6],
    }),
    "fig5-full": ("converge", {
        "families": [_family(5000, e / (5000 * 4999), 10, 500, integer=False) for e in _FIG5_EDGES], "K": 1e6,
    }),
    "fig5-desk": ("converge", {
        "families": [_family(1000, p, 10, 100, integer=False) for p in (0.0025, 0.005, 0.01, 0.1, 0.5, 1.0)], "K": 1e6,
    }),
    "bench-desk": ("bench", {
        "families": [_family(2000, p, 10, 2) for p in (0.01, 0.05, 0.2, 1.0)],
        "sweeps": 10, "repeats": 5, "warmup": 2,
    }),
    "bench-full": ("bench", {
        "families": [_family(5000, e / (5000 * 4999), 10, 3) for e in _FIG5_EDGES],
        "sweeps": 10, "repeats": 5, "warmup": 2,
    }),
}


def preset(name: str, command: str) -> dict:
    try:
        owner, config = PRESETS[name]
    except KeyError:
        raise ValueError(f"unknown preset {name!r}; known: {', '.join(sorted(PRESETS))}") from None
    if owner != command:
        raise ValueError(f"preset {name!r} belongs to '{owner}', not '{command}'")
    return config
