from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from ..core import ChainParams, ChainWitness, OrderedGraph, bits, mask_of, validate_chain
from ..finders import find_clique_pair_bipartite, iter_cliques
from .failures import ExtractionFailure, PreconditionError


def _members(mask: int) -> list[int]:
    return list(bits(mask))


@dataclass(frozen=True)
class ChainThresholds:
    """Scale knobs for :func:`chain_extract_recursive`.

    ``None`` fractions take the full-scale values for the given ``s, t``:
    the left part keeps a ``t/(s+t)`` share, a non-neighbourhood counts as
    large at ``(s/(s+t))^2 N``, and a right vertex is dense to the last
    A-block at ``(t/(s+t))^2`` of it.
    """

    a_min: int
    left_fraction: Fraction | None = None
    nonneighbor_fraction: Fraction | None = None
    dense_fraction: Fraction | None = None

    def resolved(self, s: int, t: int) -> tuple[Fraction, Fraction, Fraction]:
        return (
            self.left_fraction if self.left_fraction is not None else Fraction(t, s + t),
            self.nonneighbor_fraction if self.nonneighbor_fraction is not None else Fraction(s, s + t) ** 2,
            self.dense_fraction if self.dense_fraction is not None else Fraction(t, s + t) ** 2,
        )


def chain_extract_recursive(
    g: OrderedGraph,
    s: int,
    t: int,
    l: int,
    thresholds: ChainThresholds,
    *,
    r: int | None = None,
    within: Iterable[int] | None = None,
) -> ChainWitness:
    """An ``(s, t)``-chain of length at least ``l``, built by the two-thirds recursion.

    ``r`` is the assumed independence bound (default ``s``). Lengths up to 3
    come from a direct clique-extension search. Longer chains either recurse
    into a large non-neighbourhood with ``r - 1``, or glue two chains of
    length ``ceil(2l/3)`` (one on the left part, one on the right vertices
    dense to its last A-block) through a ``t + t`` clique between the two
    facing A-blocks. Raises :class:`ExtractionFailure` naming the branch
    that could not be completed.
    """
    if l < 1:
        raise PreconditionError("chain length must be >= 1")
    if s < 2 or t < 1 or thresholds.a_min < 1:
        raise PreconditionError("need s >= 2, t >= 1, a_min >= 1")
    run = _ChainRun(g, s, t, thresholds)
    V = sorted(set(within)) if within is not None else list(range(g.n_vertices))
    out = run.rec(V, l, s if r is None else r, 0)
    assert out.k >= l and validate_chain(g, out, ChainParams(thresholds.a_min, t, s))
    return out


class _ChainRun:
    def __init__(self, g, s, t, thresholds: ChainThresholds):
        self.g = g
        self.rows = g.rows
        self.s = s
        self.t = t
        self.a_min = thresholds.a_min
        self.left_frac, self.nonnbr_frac, self.dense_frac = thresholds.resolved(s, t)

    def _complete(self, V) -> bool:
        m = mask_of(V)
        return all((self.rows[v] | 1 << v) & m == m for v in V)

    def _direct(self, V, l) -> ChainWitness:
        a, t = self.a_min, self.t
        links, pos = [], 0
        for i in range(l):
            A = V[pos : pos + a]
            pos += a
            bs = []
            if i < l - 1:
                bs.append(V[pos : pos + t])
                pos += t
            links.append((A, bs))
        return ChainWitness.build(links)

    def rec(self, V: list[int], l: int, r: int, depth: int) -> ChainWitness:
        need = l * self.a_min + (l - 1) * self.t
        if len(V) < need:
            raise ExtractionFailure(
                "chain/size", "vertex set smaller than the shortest possible chain",
                depth=depth, size=len(V), length=l, needed=need,
            )
        if self._complete(V):
            # no independent pair: the r = 2 case, consecutive blocks work
            return self._direct(V, l)
        if r <= 2:
            raise ExtractionFailure(
                "chain/r2", "independence bound exhausted but an independent pair remains",
                depth=depth, size=len(V), length=l,
            )
        if l == 1:
            return ChainWitness.build([(V[: self.a_min], [])])
        if l <= 3:
            return self._clique_extension(V, l, depth)
        return self._split(V, l, r, depth)

    def _clique_extension(self, V, l, depth) -> ChainWitness:
        """``X < S_1 < Y (< S_2 < Z)`` with every extension set complete to the cliques.

        Searching pairs of ``t``-cliques is enough: any larger clique with
        such extension sets contains a ``2t``-clique with the same sets.
        """
        rows, t, a = self.rows, self.t, self.a_min
        allowed = mask_of(V)
        for S1 in iter_cliques(rows, t, allowed):
            W1 = allowed
            for v in S1:
                W1 &= rows[v]
            X = W1 & ((1 << S1[0]) - 1)
            if X.bit_count() < a:
                continue
            after1 = W1 >> (S1[-1] + 1) << (S1[-1] + 1)
            if l == 2:
                if after1.bit_count() >= a:
                    return ChainWitness.build([(_members(X), [S1]), (_members(after1), [])])
                continue
            for S2 in iter_cliques(rows, t, after1):
                W = W1
                for v in S2:
                    W &= rows[v]
                Y = W & ((1 << S2[0]) - 1) & ~((1 << (S1[-1] + 1)) - 1)
                Z = W >> (S2[-1] + 1) << (S2[-1] + 1)
                X2 = W & ((1 << S1[0]) - 1)
                if X2.bit_count() >= a and Y.bit_count() >= a and Z.bit_count() >= a:
                    return ChainWitness.build([(_members(X2), [S1]), (_members(Y), [S2]), (_members(Z), [])])
        raise ExtractionFailure(
            "chain/base", "no clique with large enough extension sets",
            depth=depth, size=len(V), length=l, a_min=a,
        )

    def _split(self, V, l, r, depth) -> ChainWitness:
        rows = self.rows
        N = len(V)
        cut = int(self.left_frac * N)
        A, B = V[:cut], V[cut:]
        Bmask = mask_of(B)
        big = self.nonnbr_frac * N
        best = None
        for v in A:
            X = Bmask & ~rows[v]
            if X.bit_count() >= big and (best is None or X.bit_count() > best.bit_count()):
                best = X
        if best is not None:
            return self.rec(_members(best), l, r - 1, depth + 1)

        m = -(-2 * l // 3)
        left = self.rec(A, m, r, depth + 1).truncate(m)
        last_a = left.links[-1].a
        last_mask = mask_of(last_a)
        dense = self.dense_frac * len(last_a)
        Z = [b for b in B if (rows[b] & last_mask).bit_count() >= dense]
        right = self.rec(Z, m, r, depth + 1).truncate(m)
        first_a = right.links[0].a
        pair = find_clique_pair_bipartite(self.g, last_a, first_a, self.t)
        if pair is None:
            raise ExtractionFailure(
                "chain/join", "no t+t clique between the facing A-blocks",
                depth=depth, left_block=len(last_a), right_block=len(first_a), t=self.t,
            )
        Y, Y2 = pair
        links = [(lk.a, list(lk.bs)) for lk in left.links[:-1]]
        links[-1][1].extend([Y, Y2, *right.links[0].bs])
        links.extend((lk.a, list(lk.bs)) for lk in right.links[1:])
        return ChainWitness.build(links)
