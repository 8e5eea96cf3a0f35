"""Hand-built hosts shared by several test modules."""

from ordramsey.core import OrderedGraph


def certificate_host(n=12):
    """Disjoint 10-vertex blocks laid out as A B A B A (s=3, t=2, a_min=2).

    The middle A-block of every block is a non-edge, so the decreasing chain
    of f-values breaks; the last A-block of block 0 is joined to the first
    A-block of every later block, which gives a clique pair across parts.
    """
    s, bs = 3, 10
    nb = s * n
    edges = []
    for a in range(nb):
        o = a * bs
        edges += [(o + u, o + v) for u in range(bs) for v in range(u + 1, bs) if (u, v) != (4, 5)]
    edges += [(u, a * bs + w) for u in (8, 9) for a in range(1, nb) for w in (0, 1)]
    return OrderedGraph.from_edges(nb * bs, edges), dict(s=3, t=2, n=n, block_size=bs, a_min=2)


def planted_pair_host(rng, n=60, t=2, p=0.08):
    """Sparse noise on ``n`` vertices plus a hidden ``2t``-clique split across the halves."""
    half = n // 2
    edges = {(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p}
    t1 = sorted(rng.sample(range(half), t))
    t2 = sorted(rng.sample(range(half, n), t))
    clique = t1 + t2
    edges |= {(a, b) for i, a in enumerate(clique) for b in clique[i + 1:]}
    return OrderedGraph.from_edges(n, sorted(edges)), list(range(half)), list(range(half, n))


def no_independent_triple(n, rng, tries=None):
    """Complement of a random greedy triangle-free graph: no independent 3-set by construction."""
    rows = [0] * n
    edges = []
    for _ in range(tries if tries is not None else 2 * n):
        u, v = rng.sample(range(n), 2)
        if rows[u] >> v & 1 or rows[u] & rows[v]:
            continue
        rows[u] |= 1 << v
        rows[v] |= 1 << u
        edges.append((min(u, v), max(u, v)))
    sparse = set(edges)
    return OrderedGraph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n) if (u, v) not in sparse])
