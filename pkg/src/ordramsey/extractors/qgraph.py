from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from ..bounds import kst_min_part_size
from ..core import BLUE, RED, EdgeColoring, OrderedGraph, QGraph, Witness, mask_of, validate_witness
from ..finders import DEFAULT_BUDGET, SearchBudget, find_clique_pair_bipartite, find_ordered_embedding
from .failures import ExtractionFailure, PreconditionError


def lambda_from_epsilon(epsilon: float) -> float:
    u = 2 ** (epsilon / 2)
    return (u - 1) / (2 * u - 1)


@dataclass(frozen=True)
class QExtractParams:
    """Parameters of the halving recursion.

    ``lam`` defaults to the value derived from ``epsilon``; it may be set
    directly to run at small scale. ``l0`` is where exact search takes over.
    """

    epsilon: float = 1.0
    s: int = 2
    l0: int = 3
    lam: float | None = None

    def __post_init__(self):
        if self.epsilon <= 0:
            raise ValueError("epsilon must be positive")
        if self.l0 < 3:
            raise ValueError("l0 must be >= 3 so both halves keep two blocks")
        if self.lam is None:
            object.__setattr__(self, "lam", lambda_from_epsilon(self.epsilon))
        if not 0 < self.lam < 1:
            raise ValueError("lambda must lie in (0, 1)")


def q_ramsey_extract(
    c: EdgeColoring,
    l: int,
    n: int,
    t: int,
    params: QExtractParams,
    budget: SearchBudget = DEFAULT_BUDGET,
) -> Witness:
    """Red ``Q_l^{t,s}`` or blue ``Q_n^{t,s}`` by the halving recursion.

    At each level the vertex set is cut into halves. The colour with more
    left-half vertices sending at least ``N/4`` edges of that colour across
    (ties go to red) is the working colour; its target length ``a`` is halved.
    A copy of ``Q_{ceil(a/2)}`` is found among those vertices, right-half
    vertices with at least ``lam*s`` working-colour neighbours in its last
    clique ``S`` are kept, a copy of ``Q_{floor(a/2)}`` is found there, and
    a ``K_{t,t}`` between ``S`` and the first clique ``S'`` of the second copy
    glues them into ``Q_a``. If either recursive call returns the other
    colour's target instead, that is returned unchanged.
    """
    if c.n_colors != 2:
        raise PreconditionError("need a two-colouring")
    if l < 2 or n < 2:
        raise PreconditionError("Q-graphs need at least two blocks")
    s = params.s
    if s <= t:
        raise PreconditionError(f"need s > t, got s={s}, t={t}")
    kst = kst_min_part_size(t, Fraction(params.lam).limit_denominator(10**9))
    if s < kst:
        raise PreconditionError(f"s={s} is below the K_{{t,t}} threshold {kst} for lambda={params.lam:.6g}")
    run = _QRun(c, t, params, budget)
    color, verts = run.extract(list(range(c.n_vertices)), {RED: l, BLUE: n}, depth=0)
    target = l if color == RED else n
    w = Witness(QGraph(target, t, s), tuple(verts), color)
    assert validate_witness(c, w)
    return w


class _QRun:
    def __init__(self, c, t, params, budget):
        self.c = c
        self.t = t
        self.s = params.s
        self.l0 = params.l0
        self.lam = params.lam
        self.budget = budget

    def _base(self, V, targets, depth):
        within = V
        for color in (RED, BLUE):
            w = find_ordered_embedding(self.c, color, QGraph(targets[color], self.t, self.s), self.budget, within=within)
            if w is not None:
                return color, list(w.vertices)
        raise ExtractionFailure(
            "q_ramsey/base", "neither target found by exact search",
            depth=depth, size=len(V), red_target=targets[RED], blue_target=targets[BLUE],
        )

    def extract(self, V: list[int], targets: dict[int, int], depth: int):
        if min(targets.values()) <= self.l0:
            return self._base(V, targets, depth)
        if len(V) % 2:
            V = V[:-1]
        N = len(V)
        if N < 4:
            raise ExtractionFailure("q_ramsey/split", "vertex set too small to halve", depth=depth, size=N)
        left, right = V[: N // 2], V[N // 2 :]
        right_mask = mask_of(right)
        quarter = N / 4
        heavy = {}
        for color in (RED, BLUE):
            rows = self.c.class_rows[color]
            heavy[color] = [v for v in left if (rows[v] & right_mask).bit_count() >= quarter]
        work = RED if len(heavy[RED]) >= len(heavy[BLUE]) else BLUE
        V1 = heavy[work]
        assert len(V1) >= quarter
        a = targets[work]

        first = self.extract(V1, {**targets, work: -(-a // 2)}, depth + 1)
        if first[0] != work:
            return first
        X = first[1]
        S = X[-self.s :]
        rows = self.c.class_rows[work]
        need = self.lam * self.s
        V2 = [v for v in right if (rows[v] & mask_of(S)).bit_count() >= need]
        # counting bound: every vertex of S has >= N/4 working-colour edges to the right half
        lower = (0.25 - self.lam / 2) / (1 - self.lam) * N
        assert len(V2) >= lower - 1e-9, (len(V2), lower)

        second = self.extract(V2, {**targets, work: a // 2}, depth + 1)
        if second[0] != work:
            return second
        Y = second[1]
        S2 = Y[: self.s]
        graph = OrderedGraph(self.c.n_vertices, rows)
        pair = find_clique_pair_bipartite(graph, S, S2, self.t)
        if pair is None:
            cross = sum((rows[v] & mask_of(S2)).bit_count() for v in S)
            raise ExtractionFailure(
                "q_ramsey/kst", "no K_{t,t} between the end cliques",
                depth=depth, cross_edges=cross, required=math.ceil(need * self.s), s=self.s, t=self.t,
            )
        U, U2 = pair
        return work, sorted(X[: -self.s] + list(U) + list(U2) + Y[self.s :])
