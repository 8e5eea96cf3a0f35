from hypothesis import strategies as st

from ordramsey.core import Clique, EdgeColoring, MonotonePath, OrderedGraph, PathPower, QGraph


@st.composite
def graphs(draw, min_n=0, max_n=10):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return OrderedGraph.from_edges(n, [p for p, k in zip(pairs, keep) if k])


@st.composite
def colorings(draw, min_n=0, max_n=9, n_colors=2):
    n = draw(st.integers(min_n, max_n))
    m = n * (n - 1) // 2
    cols = draw(st.lists(st.integers(0, n_colors - 1), min_size=m, max_size=m))
    return EdgeColoring.from_pairs(n, n_colors, cols)


patterns = st.one_of(
    st.builds(Clique, st.integers(1, 5)),
    st.builds(MonotonePath, st.integers(1, 6)),
    st.builds(PathPower, st.integers(1, 6), st.integers(1, 3)),
    st.builds(QGraph, st.integers(2, 4), st.integers(1, 2), st.integers(1, 3)),
)
