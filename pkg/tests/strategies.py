from hypothesis import strategies as st

from pathweave.graph import Graph


@st.composite
def graphs(draw, max_nodes=7, min_cost=1, max_cost=20):
    n = draw(st.integers(1, max_nodes))
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    costs = draw(st.lists(st.integers(min_cost, max_cost), min_size=len(chosen), max_size=len(chosen)))
    return Graph.from_edges(n, [(u, v, float(c)) for (u, v), c in zip(chosen, costs)])
