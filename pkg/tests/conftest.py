from itertools import combinations

from hypothesis import strategies as st

from chromagallai.graph import Graph


@st.composite
def graphs(draw, min_n=0, max_n=9):
    n = draw(st.integers(min_n, max_n))
    pairs = list(combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph.from_edges(n, chosen)


@st.composite
def graphs_with_perm(draw, max_n=9):
    g = draw(graphs(min_n=1, max_n=max_n))
    perm = draw(st.permutations(range(g.n)))
    return g, list(perm)
