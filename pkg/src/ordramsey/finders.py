"""Exact searches: path powers, cliques, ordered embeddings, chains.

These are the oracles the extractors are checked against. Every search that
can be cut short by a :class:`SearchBudget` raises :class:`BudgetExhausted`
instead of returning ``None``, so "absent" always means "proved absent".
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from .core import (
    ChainParams,
    ChainWitness,
    Clique,
    Host,
    OrderedGraph,
    Pattern,
    PathPower,
    Witness,
    bits,
    class_rows,
    mask_of,
)


class BudgetExhausted(RuntimeError):
    """The search hit its node limit before reaching a verdict."""

    def __init__(self, nodes: int):
        super().__init__(f"search budget exhausted after {nodes} nodes")
        self.nodes = nodes


@dataclass(frozen=True)
class SearchBudget:
    max_nodes: int = 10_000_000
    deterministic: bool = True

    def __post_init__(self):
        if self.max_nodes < 1:
            raise ValueError("max_nodes must be >= 1")


DEFAULT_BUDGET = SearchBudget()


@dataclass
class SearchStats:
    nodes: int = 0
    prunes: int = 0


class _Meter:
    __slots__ = ("limit", "stats")

    def __init__(self, budget: SearchBudget, stats: SearchStats | None):
        self.limit = budget.max_nodes
        self.stats = stats if stats is not None else SearchStats()

    def tick(self):
        self.stats.nodes += 1
        if self.stats.nodes > self.limit:
            raise BudgetExhausted(self.stats.nodes)

    def prune(self):
        self.stats.prunes += 1


def _all_mask(n: int) -> int:
    return (1 << n) - 1


# ---------------------------------------------------------------------------
# cliques
# ---------------------------------------------------------------------------


def iter_cliques(rows: Sequence[int], k: int, within: int) -> Iterator[tuple[int, ...]]:
    """All ``k``-cliques inside ``within`` in lexicographic order."""
    if k == 0:
        yield ()
        return
    stack: list[int] = []

    def rec(cand: int, need: int):
        if need == 0:
            yield tuple(stack)
            return
        while cand and cand.bit_count() >= need:
            low = cand & -cand
            v = low.bit_length() - 1
            cand ^= low
            stack.append(v)
            yield from rec(cand & rows[v], need - 1)
            stack.pop()

    yield from rec(within, k)


def _greedy_color_bound(rows: Sequence[int], cand: int) -> int:
    """Number of colours in a greedy colouring of ``cand``; bounds its clique number."""
    colors = 0
    while cand:
        colors += 1
        avail = cand
        while avail:
            low = avail & -avail
            v = low.bit_length() - 1
            cand &= ~low
            avail &= ~low & ~rows[v]
    return colors


def find_clique_rows(
    rows: Sequence[int],
    k: int,
    within: int,
    budget: SearchBudget = DEFAULT_BUDGET,
    stats: SearchStats | None = None,
) -> tuple[int, ...] | None:
    if k < 1:
        raise ValueError("clique size must be >= 1")
    meter = _Meter(budget, stats)
    if budget.deterministic:
        order = list(bits(within))
    else:
        # degree-descending: large cliques tend to sit among high-degree vertices
        order = sorted(bits(within), key=lambda v: (-(rows[v] & within).bit_count(), v))
    pos = {v: i for i, v in enumerate(order)}
    later = [0] * len(order)
    acc = 0
    for v in reversed(order):
        later[pos[v]] = acc
        acc |= 1 << v
    stack: list[int] = []

    def rec(cand: int, need: int) -> bool:
        meter.tick()
        if need == 0:
            return True
        if cand.bit_count() < need:
            meter.prune()
            return False
        if need > 2 and _greedy_color_bound(rows, cand) < need:
            meter.prune()
            return False
        for v in order:
            if not cand >> v & 1:
                continue
            if cand.bit_count() < need:
                break
            stack.append(v)
            if rec(cand & rows[v] & later[pos[v]], need - 1):
                return True
            stack.pop()
            cand &= ~(1 << v)
        return False

    if rec(within, k):
        return tuple(sorted(stack))
    return None


def find_clique(
    g: OrderedGraph,
    k: int,
    budget: SearchBudget = DEFAULT_BUDGET,
    *,
    within: Iterable[int] | None = None,
    stats: SearchStats | None = None,
) -> Witness | None:
    """A ``k``-clique of ``g``; the lexicographically first one when deterministic."""
    w = _all_mask(g.n_vertices) if within is None else mask_of(within)
    found = find_clique_rows(g.rows, k, w, budget, stats)
    return None if found is None else Witness(Clique(k), found)


def count_cliques(g: OrderedGraph, l: int) -> int:
    if l < 1:
        raise ValueError("clique size must be >= 1")
    rows = g.rows
    higher = [row >> (v + 1) << (v + 1) for v, row in enumerate(rows)]

    def rec(cand: int, need: int) -> int:
        if need == 1:
            return cand.bit_count()
        total = 0
        for v in bits(cand):
            total += rec(cand & higher[v], need - 1)
        return total

    return rec(_all_mask(g.n_vertices), l)


# ---------------------------------------------------------------------------
# path powers
# ---------------------------------------------------------------------------


class PathPowerTable:
    """Longest monotone ``t``-th path powers ending in each ordered ``t``-clique.

    States are ordered ``t``-cliques ``(v_1 < ... < v_t)``; a state's value is
    the longest path power whose last ``t`` vertices are exactly the state.
    Moving from ``(v_1..v_t)`` to ``(v_2..v_t, w)`` needs ``w > v_t`` adjacent
    to all of ``v_1..v_t``. One table answers every ``ending_in`` query.
    """

    def __init__(self, rows: Sequence[int], n: int, t: int):
        if t < 1:
            raise ValueError("power t must be >= 1")
        self.rows = rows
        self.n = n
        self.t = t
        self.value: dict[tuple[int, ...], int] = {}
        self.pred: dict[tuple[int, ...], tuple[int, ...] | None] = {}
        full = _all_mask(n)
        states = sorted(iter_cliques(rows, t, full), key=lambda s: (s[-1], s))
        for st in states:
            self.value[st] = t
            self.pred[st] = None
        for st in states:
            val = self.value[st]
            nxt = full >> (st[-1] + 1) << (st[-1] + 1)
            for v in st:
                nxt &= rows[v]
            tail = st[1:]
            for w in bits(nxt):
                succ = tail + (w,)
                if val + 1 > self.value[succ]:
                    self.value[succ] = val + 1
                    self.pred[succ] = st

    def _path(self, st: tuple[int, ...]) -> list[int]:
        out = []
        cur: tuple[int, ...] | None = st
        while cur is not None:
            prev = self.pred[cur]
            if prev is None:
                out.extend(reversed(cur))
            else:
                out.append(cur[-1])
            cur = prev
        return out[::-1]

    def longest(self, ending_in: Iterable[int] | None = None) -> tuple[int, Witness]:
        within = _all_mask(self.n) if ending_in is None else mask_of(ending_in)
        if within == 0:
            return 0, Witness(PathPower(1, self.t), ())
        best: tuple[int, ...] | None = None
        best_val = 0
        for st, val in self.value.items():
            if not all(within >> v & 1 for v in st):
                continue
            if best is None or val > best_val or (val == best_val and st < best):
                best, best_val = st, val
        if best is not None:
            path = self._path(best)
            return best_val, Witness(PathPower(best_val, self.t), path)
        # no t-clique in the target set: the best is its largest clique (< t)
        for k in range(self.t - 1, 0, -1):
            found = find_clique_rows(self.rows, k, within)
            if found is not None:
                return k, Witness(PathPower(k, self.t), found)
        raise AssertionError("unreachable: a non-empty set contains a 1-clique")


def longest_path_power(
    g: OrderedGraph | Host,
    t: int,
    ending_in: Iterable[int] | None = None,
    *,
    color: int | None = None,
) -> tuple[int, Witness]:
    """Exact length of the longest monotone ``P_n^t`` in ``g`` (or one colour class).

    With ``ending_in``, the last ``min(n, t)`` vertices must lie in that set;
    an empty set gives length 0 and an empty witness.
    """
    rows = class_rows(g, color)
    table = PathPowerTable(rows, g.n_vertices, t)
    length, w = table.longest(ending_in)
    if color is not None:
        w = Witness(w.pattern, w.vertices, color)
    return length, w


# ---------------------------------------------------------------------------
# ordered embeddings
# ---------------------------------------------------------------------------


def find_ordered_embedding(
    host: Host,
    color: int | None,
    p: Pattern,
    budget: SearchBudget = DEFAULT_BUDGET,
    *,
    within: Iterable[int] | None = None,
    stats: SearchStats | None = None,
) -> Witness | None:
    """Order-preserving copy of ``p`` inside one colour class of ``host``.

    Pattern vertices are placed left to right; vertex ``i`` must land after
    vertex ``i-1`` and inside the common neighbourhood of its earlier
    neighbours' images. The first copy found is the lexicographically first.
    """
    rows = class_rows(host, color)
    n = host.n_vertices
    m = p.n_vertices
    meter = _Meter(budget, stats)
    allowed = _all_mask(n) if within is None else mask_of(within)
    back = p.back_neighbors
    # room[i]: how many allowed vertices lie at or after each position
    room = [0] * (n + 1)
    for v in range(n - 1, -1, -1):
        room[v] = room[v + 1] + (allowed >> v & 1)
    image = [0] * m

    def rec(i: int, after: int) -> bool:
        meter.tick()
        if i == m:
            return True
        cand = allowed >> after << after
        for j in back[i]:
            cand &= rows[image[j]]
        need = m - i
        for v in bits(cand):
            if room[v] < need:
                meter.prune()
                break
            image[i] = v
            if rec(i + 1, v + 1):
                return True
        return False

    if m == 0:
        return Witness(p, (), color)
    if rec(0, 0):
        return Witness(p, tuple(image), color)
    return None


# ---------------------------------------------------------------------------
# chains
# ---------------------------------------------------------------------------


def _subsets_of_size(mask: int, k: int) -> Iterator[tuple[int, ...]]:
    yield from combinations(list(bits(mask)), k)


def find_chain(
    g: OrderedGraph,
    p: ChainParams,
    k: int,
    budget: SearchBudget = DEFAULT_BUDGET,
    *,
    interval_a: bool = True,
    within: Iterable[int] | None = None,
    stats: SearchStats | None = None,
) -> ChainWitness | None:
    """An ``(s, t)``-chain of length ``k`` in ``g``, or ``None`` if there is none.

    Only ``|A_i| = a_min`` is tried: any ``a_min``-subset of a valid A-block is
    again valid. With ``interval_a`` (the default) A-blocks are restricted to
    runs of consecutive vertices of ``within``; ``interval_a=False`` is the
    unrestricted oracle mode. The last link never gets B-blocks (``p_k = 0``).

    The search remembers failed states. A state is the candidate set for the
    next block (common neighbourhood of the previous block, right of it) and
    how many A-blocks remain, which is all the future depends on.
    """
    if k < 1:
        raise ValueError("chain length must be >= 1")
    meter = _Meter(budget, stats)
    rows = g.rows
    allowed = _all_mask(g.n_vertices) if within is None else mask_of(within)
    order = list(bits(allowed))
    index = {v: i for i, v in enumerate(order)}
    a_min, t = p.a_min, p.t
    failed: set[tuple[int, bool, int]] = set()
    blocks: list[tuple[str, tuple[int, ...]]] = []

    def right_of(block) -> int:
        top = block[-1] + 1
        return allowed >> top << top

    def a_choices(cand: int) -> Iterator[tuple[int, ...]]:
        if interval_a:
            for i in range(len(order) - a_min + 1):
                run = order[i : i + a_min]
                if all(cand >> v & 1 for v in run):
                    yield tuple(run)
        else:
            yield from _subsets_of_size(cand, a_min)

    def common(block) -> int:
        m = right_of(block)
        for v in block:
            m &= rows[v]
        return m

    def place_a(cand: int, remaining: int) -> bool:
        # remaining counts A-blocks still to place, including this one
        key = (cand, True, remaining)
        if key in failed:
            meter.prune()
            return False
        for a in a_choices(cand):
            meter.tick()
            blocks.append(("a", a))
            if remaining == 1 or place_b(common(a), remaining - 1):
                return True
            blocks.pop()
        failed.add(key)
        return False

    def place_b(cand: int, remaining: int) -> bool:
        key = (cand, False, remaining)
        if key in failed:
            meter.prune()
            return False
        for b in iter_cliques(rows, t, cand):
            meter.tick()
            blocks.append(("b", b))
            nxt = common(b)
            if place_a(nxt, remaining) or place_b(nxt, remaining):
                return True
            blocks.pop()
        failed.add(key)
        return False

    if not place_a(allowed, k):
        return None
    links: list[tuple[tuple[int, ...], list[tuple[int, ...]]]] = []
    for kind, block in blocks:
        if kind == "a":
            links.append((block, []))
        else:
            links[-1][1].append(block)
    return ChainWitness.build(links)


def find_clique_pair_bipartite(
    g: OrderedGraph,
    v1: Iterable[int],
    v2: Iterable[int],
    t: int,
) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """First ``(T1, T2)`` with ``T1 ⊆ v1``, ``T2 ⊆ v2``, ``|T_i| = t`` and ``T1 ∪ T2`` a clique."""
    m1, m2 = mask_of(v1), mask_of(v2)
    if m1 & m2:
        raise ValueError("v1 and v2 must be disjoint")
    rows = g.rows
    for t1 in iter_cliques(rows, t, m1):
        cand = m2
        for v in t1:
            cand &= rows[v]
        if cand.bit_count() < t:
            continue
        t2 = find_clique_rows(rows, t, cand)
        if t2 is not None:
            return t1, t2
    return None
