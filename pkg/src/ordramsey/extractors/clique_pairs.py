from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from ..core import OrderedGraph, bits, mask_of
from ..finders import find_clique_pair_bipartite, find_clique_rows
from .failures import ExtractionFailure, PreconditionError

Pair = tuple[tuple[int, ...], tuple[int, ...]]


@dataclass(frozen=True)
class PairOutcome:
    """Result of :func:`sample_clique_pair`.

    ``source`` is ``"sampler"`` or ``"oracle"`` when a pair was found. With no
    pair it is ``"absent"`` (the exhaustive search proved there is none) or
    ``"sampler_exhausted"`` (retries ran out and the fallback was disabled).
    """

    pair: Pair | None
    source: str
    samples: int

    @property
    def found(self) -> bool:
        return self.pair is not None


def _common(rows, vertices, within: int) -> int:
    for v in vertices:
        within &= rows[v]
    return within


def sample_clique_pair(
    g: OrderedGraph,
    v1: Iterable[int],
    v2: Iterable[int],
    t: int,
    s: int | None = None,
    rng_seed: int = 0,
    retries: int = 32,
    *,
    bad_cap: int = 10**6,
    fallback: bool = True,
) -> PairOutcome:
    """Randomised search for ``T1 ⊆ v1``, ``T2 ⊆ v2`` of size ``t`` with ``T1 ∪ T2`` a clique.

    One attempt: draw ``2t`` vertices of the larger side with replacement,
    let ``R`` be their common neighbourhood on the smaller side, delete a
    vertex from every ``t``-subset of ``R`` whose common neighbourhood on the
    larger side has at most ``sqrt(|smaller side|)`` vertices, then look for a
    ``t``-clique ``T1`` in what is left and a ``t``-clique ``T2`` among its
    common neighbours. ``s`` is accepted for symmetry with the callers; the
    search does not depend on it.
    """
    if t < 1:
        raise PreconditionError("t must be >= 1")
    m1, m2 = mask_of(v1), mask_of(v2)
    if m1 & m2:
        raise PreconditionError("v1 and v2 must be disjoint")
    swapped = m2.bit_count() < m1.bit_count()
    small, large = (m2, m1) if swapped else (m1, m2)
    rows = g.rows
    N = small.bit_count()
    large_list = list(bits(large))
    rng = random.Random(rng_seed)

    def orient(a, b) -> Pair:
        return (b, a) if swapped else (a, b)

    samples = 0
    if N >= t and len(large_list) >= t:
        for _ in range(retries):
            samples += 1
            drawn = [rng.choice(large_list) for _ in range(2 * t)]
            R = _common(rows, drawn, small)
            kept = R
            enumerated = 0
            for ts in combinations(list(bits(R)), t):
                enumerated += 1
                if enumerated > bad_cap:
                    break
                if all(kept >> v & 1 for v in ts):
                    cn = _common(rows, ts, large).bit_count()
                    if cn * cn <= N:
                        kept &= ~(1 << ts[-1])
            else:
                t1 = find_clique_rows(rows, t, kept) if kept.bit_count() >= t else None
                if t1 is None:
                    continue
                t2 = find_clique_rows(rows, t, _common(rows, t1, large))
                if t2 is None:
                    continue
                pair = orient(t1, t2)
                assert g.is_clique(pair[0] + pair[1])
                return PairOutcome(pair, "sampler", samples)
    if not fallback:
        return PairOutcome(None, "sampler_exhausted", samples)
    found = find_clique_pair_bipartite(g, bits(m1), bits(m2), t)
    if found is None:
        return PairOutcome(None, "absent", samples)
    assert g.is_clique(found[0] + found[1])
    return PairOutcome(found, "oracle", samples)


def clique_pair_across_parts(
    g: OrderedGraph,
    parts: Sequence[Iterable[int]],
    t: int,
    *,
    rng_seed: int = 0,
    retries: int = 32,
) -> tuple[int, int, tuple[int, ...], tuple[int, ...]]:
    """Indices ``i < j`` and ``t``-sets ``T_i ⊆ parts[i]``, ``T_j ⊆ parts[j]`` forming a clique.

    Induction on the number of parts: if some vertex of the last part has few
    neighbours (at most a ``t/(s+t)`` fraction) in every other part, recurse
    on its non-neighbourhoods, which lose one from the independence bound.
    Otherwise every vertex of the last part is dense to some part; the
    largest such group and its part go to :func:`sample_clique_pair`.
    """
    masks = [mask_of(p) for p in parts]
    if len(masks) < 2:
        raise PreconditionError("need at least two parts")
    for a, b in combinations(masks, 2):
        if a & b:
            raise PreconditionError("parts must be pairwise disjoint")
    i, j, ti, tj = _across(g, masks, list(range(len(masks))), t, rng_seed, retries)
    assert i < j and g.is_clique(ti + tj)
    return i, j, ti, tj


def _across(g, masks, idx, t, seed, retries):
    rows = g.rows
    s = len(masks)
    if s == 2:
        out = sample_clique_pair(g, bits(masks[0]), bits(masks[1]), t, s, seed, retries)
        if not out.found:
            raise ExtractionFailure(
                "clique_pair_across_parts/base", "no t-clique pair between the last two parts",
                parts=idx, sizes=[m.bit_count() for m in masks], t=t, source=out.source,
            )
        return idx[0], idx[1], out.pair[0], out.pair[1]
    N = min(m.bit_count() for m in masks)
    thr = Fraction(t, s + t) * N
    last = masks[-1]
    sparse_choice = None
    for v in bits(last):
        if all((rows[v] & m).bit_count() <= thr for m in masks[:-1]):
            rest = [m & ~rows[v] for m in masks[:-1]]
            size = min(m.bit_count() for m in rest)
            if sparse_choice is None or size > sparse_choice[0]:
                sparse_choice = (size, rest)
    if sparse_choice is not None:
        return _across(g, sparse_choice[1], idx[:-1], t, seed, retries)
    groups: dict[int, int] = {}
    for v in bits(last):
        for i, m in enumerate(masks[:-1]):
            if (rows[v] & m).bit_count() > thr:
                groups[i] = groups.get(i, 0) | 1 << v
                break
    i, dense = max(groups.items(), key=lambda kv: (kv[1].bit_count(), -kv[0]))
    out = sample_clique_pair(g, bits(masks[i]), bits(dense), t, s, seed, retries)
    if not out.found:
        raise ExtractionFailure(
            "clique_pair_across_parts/dense", "dense group has no t-clique pair with its part",
            part=idx[i], last=idx[-1], group_size=dense.bit_count(), part_size=masks[i].bit_count(),
            t=t, source=out.source,
        )
    return idx[i], idx[-1], out.pair[0], out.pair[1]
