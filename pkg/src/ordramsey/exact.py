"""Exhaustive two-colour ordered Ramsey search and DIMACS export.

Pairs of ``[N]`` are indexed by larger endpoint, then smaller endpoint, and
coloured one at a time (red = 0 first), so each new vertex is joined to a
fully coloured prefix. Every ordered copy of a pattern is precomputed as a
bitmask over pair indices and filed under its largest pair, so a copy is
checked exactly once: when its last pair receives a colour.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator

from .core import BLUE, RED, EdgeColoring, Pattern
from .finders import DEFAULT_BUDGET, SearchBudget, SearchStats, _Meter


@dataclass(frozen=True)
class AvoidanceInstance:
    n_vertices: int
    red_pattern: Pattern
    blue_pattern: Pattern

    def __post_init__(self):
        if self.n_vertices < 0:
            raise ValueError("n_vertices must be >= 0")
        if self.red_pattern.n_vertices < 2 or self.blue_pattern.n_vertices < 2:
            raise ValueError("both patterns need at least two vertices")


def pair_order(n: int) -> list[tuple[int, int]]:
    """Pairs sorted by larger endpoint, then smaller: all pairs inside ``[v]`` precede vertex ``v``."""
    return sorted(combinations(range(n), 2), key=lambda p: (p[1], p[0]))


def pair_index(n: int) -> dict[tuple[int, int], int]:
    return {p: k for k, p in enumerate(pair_order(n))}


def iter_copies(p: Pattern, n: int, index: dict[tuple[int, int], int]) -> Iterator[tuple[int, int]]:
    """``(mask, top)`` for every ordered copy of ``p`` in ``K_n``; ``top`` is its largest pair index."""
    edges = p.edges()
    for image in combinations(range(n), p.n_vertices):
        ks = [index[(image[a], image[b])] for a, b in edges]
        mask = 0
        for k in ks:
            mask |= 1 << k
        yield mask, max(ks)


def _copies_by_top(p: Pattern, n: int, index, n_pairs: int) -> list[list[int]]:
    out: list[list[int]] = [[] for _ in range(n_pairs)]
    for mask, top in iter_copies(p, n, index):
        out[top].append(mask)
    return out


def find_avoiding_coloring(
    inst: AvoidanceInstance,
    budget: SearchBudget = DEFAULT_BUDGET,
    *,
    stats: SearchStats | None = None,
    jobs: int = 1,
) -> EdgeColoring | None:
    """First colouring in search order with no red ``red_pattern`` and no blue ``blue_pattern``.

    ``None`` means none exists. Running out of budget raises
    :class:`~ordramsey.finders.BudgetExhausted`. When the two patterns are
    equal the first pair is fixed red, which is the one sound symmetry.
    """
    n = inst.n_vertices
    index = pair_index(n)
    n_pairs = len(index)
    if n_pairs == 0:
        return EdgeColoring.from_pairs(n, 2, ())
    red = _copies_by_top(inst.red_pattern, n, index, n_pairs)
    blue = _copies_by_top(inst.blue_pattern, n, index, n_pairs)
    first = (RED,) if inst.red_pattern == inst.blue_pattern else (RED, BLUE)
    if jobs > 1 and len(first) > 1:
        args = [(red, blue, n_pairs, c, budget) for c in first]
        with ProcessPoolExecutor(max_workers=len(first)) as pool:
            results = list(pool.map(_search_job, args))
        total = SearchStats()
        found = None
        for res, st in results:
            total.nodes += st.nodes
            total.prunes += st.prunes
            if isinstance(res, Exception):
                raise res
            if found is None and res is not None:
                found = res
        if stats is not None:
            stats.nodes += total.nodes
            stats.prunes += total.prunes
        return None if found is None else _to_coloring(n, found)
    meter = _Meter(budget, stats)
    for c in first:
        found = _search(red, blue, n_pairs, c, meter)
        if found is not None:
            return _to_coloring(n, found)
    return None


def _to_coloring(n: int, colors: list[int]) -> EdgeColoring:
    by_pair = dict(zip(pair_order(n), colors))
    return EdgeColoring.from_function(n, 2, lambda u, v: by_pair[(u, v)])


def _search_job(args):
    red, blue, n_pairs, c, budget = args
    st = SearchStats()
    try:
        return _search(red, blue, n_pairs, c, _Meter(budget, st)), st
    except Exception as e:  # re-raised in the parent
        return e, st


def _search(red, blue, n_pairs: int, first: int, meter: _Meter) -> list[int] | None:
    colors = [0] * n_pairs

    def rec(k: int, red_mask: int, blue_mask: int) -> bool:
        if k == n_pairs:
            return True
        meter.tick()
        bit = 1 << k
        options = (first,) if k == 0 else (RED, BLUE)
        for c in options:
            if c == RED:
                rm, bm, forbidden = red_mask | bit, blue_mask, red[k]
                hit = any(m & rm == m for m in forbidden)
            else:
                rm, bm, forbidden = red_mask, blue_mask | bit, blue[k]
                hit = any(m & bm == m for m in forbidden)
            if hit:
                meter.prune()
                continue
            colors[k] = c
            if rec(k + 1, rm, bm):
                return True
        return False

    return colors if rec(0, 0, 0) else None


@dataclass(frozen=True)
class RamseyResult:
    """``value`` is the exact number, or ``None`` when only ``lower_bound`` is known."""

    red: Pattern
    blue: Pattern
    value: int | None
    lower_bound: int
    certificate: EdgeColoring | None

    def to_dict(self) -> dict:
        return {
            "red": self.red.to_dict(),
            "blue": self.blue.to_dict(),
            "value": self.value,
            "lower_bound": self.lower_bound,
            "certificate": None if self.certificate is None else list(self.certificate.pair_colors()),
            "certificate_n": None if self.certificate is None else self.certificate.n_vertices,
        }


def ordered_ramsey_number(
    red: Pattern,
    blue: Pattern,
    n_max: int = 12,
    budget: SearchBudget = DEFAULT_BUDGET,
    *,
    stats: SearchStats | None = None,
    jobs: int = 1,
) -> RamseyResult:
    """Smallest ``N <= n_max`` with no avoiding colouring, plus an avoiding colouring of ``K_{N-1}``.

    If every ``N <= n_max`` has an avoiding colouring the result only says
    ``value >= n_max + 1`` and carries the colouring for ``n_max``.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    cert = None
    for n in range(1, n_max + 1):
        found = find_avoiding_coloring(AvoidanceInstance(n, red, blue), budget, stats=stats, jobs=jobs)
        if found is None:
            return RamseyResult(red, blue, n, n, cert)
        cert = found
    return RamseyResult(red, blue, None, n_max + 1, cert)


class CnfOverflow(ValueError):
    """More pattern copies than the export cap allows."""


@dataclass(frozen=True)
class Cnf:
    n_vars: int
    clauses: tuple[tuple[int, ...], ...]
    pairs: tuple[tuple[int, int], ...]

    def to_dimacs(self) -> str:
        lines = [f"c edge {u} {v} var {k + 1}" for k, (u, v) in enumerate(self.pairs)]
        lines.append(f"p cnf {self.n_vars} {len(self.clauses)}")
        lines.extend(" ".join(map(str, cl)) + " 0" for cl in self.clauses)
        return "\n".join(lines) + "\n"


def build_cnf(inst: AvoidanceInstance, cap: int = 10**6) -> Cnf:
    """Variable ``k+1`` is true when pair ``k`` is red.

    Each red copy forbids all its pairs being red, each blue copy forbids
    all being blue. Red clauses come first; identical clauses are merged.
    """
    index = pair_index(inst.n_vertices)
    clauses: dict[tuple[int, ...], None] = {}
    count = 0
    for pattern, sign in ((inst.red_pattern, -1), (inst.blue_pattern, 1)):
        for mask, _ in iter_copies(pattern, inst.n_vertices, index):
            count += 1
            if count > cap:
                raise CnfOverflow(f"more than {cap} pattern copies")
            clause = tuple(sign * (k + 1) for k in range(mask.bit_length()) if mask >> k & 1)
            clauses.setdefault(clause)
    return Cnf(len(index), tuple(clauses), tuple(index))


def export_cnf(inst: AvoidanceInstance, cap: int = 10**6) -> str:
    return build_cnf(inst, cap).to_dimacs()
