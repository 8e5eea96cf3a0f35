"""Path power versus clique: the block / chain / decreasing-positions pipeline.

The host is read as a red/blue colouring (edges red, non-edges blue), so the
outcomes are a red ``P_n^t``, a blue ``K_s`` (an independent set), or a
:class:`ContradictionCertificate`.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence, Union

from ..core import BLUE, ChainParams, ChainWitness, Clique, OrderedGraph, PathPower, Witness, complement, validate_chain, validate_witness
from ..finders import DEFAULT_BUDGET, BudgetExhausted, PathPowerTable, SearchBudget, find_chain, find_clique
from .clique_pairs import clique_pair_across_parts
from .failures import ExtractionFailure, PreconditionError
from .sequences import select_decreasing_positions


@dataclass(frozen=True)
class FTable:
    """``values[(i, a)]``: longest ``P^t`` whose last ``t`` vertices lie in A-block ``s - i`` of block ``a``."""

    values: dict[tuple[int, int], int]
    chains: tuple[ChainWitness, ...]

    def f(self, i: int) -> dict[int, int]:
        return {a: v for (k, a), v in self.values.items() if k == i}


@dataclass(frozen=True)
class ContradictionCertificate:
    """An explicitly built path power that the full-scale argument rules out.

    ``witness`` extends the ``f_i(a_i)`` path through the B-blocks and the
    clique pair, so it is strictly longer than ``f_i_ai`` and ends in the
    A-block measured by ``f_{j-1}(a_j)``. At full scale the values satisfy
    ``f_i(a_i) > ... >= f_{j-1}(a_j)``; ``broken_link`` names the step of
    that chain which failed here (usually an A-block without a ``t``-clique).
    """

    i: int
    j: int
    a_i: int
    a_j: int
    witness: Witness
    f_i_ai: int
    f_jm1_aj: int
    positions: tuple[int, ...]
    broken_link: str
    ftable: FTable = field(repr=False, compare=False, default=None)

    def to_dict(self) -> dict:
        return {
            "i": self.i, "j": self.j, "a_i": self.a_i, "a_j": self.a_j,
            "witness": self.witness.to_dict(), "f_i_ai": self.f_i_ai, "f_jm1_aj": self.f_jm1_aj,
            "positions": list(self.positions), "broken_link": self.broken_link,
        }


PipelineResult = Union[Witness, ContradictionCertificate]


def validate_certificate(g: OrderedGraph, cert: ContradictionCertificate) -> bool:
    w = cert.witness
    return (
        isinstance(w.pattern, PathPower)
        and validate_witness(g, w)
        and len(w) > cert.f_i_ai
        and cert.f_jm1_aj >= len(w)
        and cert.i < cert.j
        and cert.a_i < cert.a_j
    )


def validate_pipeline_result(g: OrderedGraph, out: PipelineResult) -> bool:
    if isinstance(out, ContradictionCertificate):
        return validate_certificate(g, out)
    return validate_witness(g, out)


def _independent_set(g: OrderedGraph, s: int, within) -> Witness | None:
    found = find_clique(complement(g), s, within=within)
    return None if found is None else Witness(Clique(s), found.vertices, BLUE)


def _chain_job(args):
    g, params, k, budget, block = args
    try:
        return find_chain(g, params, k, budget, within=block)
    except BudgetExhausted as e:
        return e


def pipeline_path_vs_clique(
    g: OrderedGraph,
    s: int,
    t: int,
    n: int,
    block_size: int,
    chain_params: ChainParams,
    *,
    budget: SearchBudget = DEFAULT_BUDGET,
    rng_seed: int = 0,
    jobs: int = 1,
) -> PipelineResult:
    """Red ``P_n^t``, blue ``K_s`` or a contradiction certificate.

    ``[N]`` is cut into ``s*n`` consecutive blocks of ``block_size``; each
    block gets an ``(s, t)``-chain of length ``s``. ``f_i(a)`` is the longest
    path power ending in A-block ``s - i`` of block ``a``. If some value
    reaches ``n`` that path is returned; otherwise positions
    ``a_1 < ... < a_s`` with ``f_i(a_i) >= f_i(a_{i+1})`` are chosen, a
    ``t + t`` clique is found across the A-blocks ``A_{s-i+1}^{(a_i)}``, and
    the longer path it yields is returned as a certificate.
    """
    if s < 2:
        raise PreconditionError("need s >= 2")
    if chain_params.s != s or chain_params.t != t:
        raise PreconditionError("chain_params must use the same s and t")
    N = g.n_vertices
    if N < s * n * block_size:
        raise PreconditionError(f"need N >= s*n*block_size = {s * n * block_size}, got {N}")
    blocks = [list(range(a * block_size, (a + 1) * block_size)) for a in range(s * n)]
    jobs_args = [(g, chain_params, s, budget, b) for b in blocks]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            found = list(pool.map(_chain_job, jobs_args))
    else:
        found = [_chain_job(a) for a in jobs_args]

    chains: list[ChainWitness] = []
    for a, (block, chain) in enumerate(zip(blocks, found)):
        if isinstance(chain, ChainWitness):
            assert validate_chain(g, chain, chain_params)
            chains.append(chain)
            continue
        ind = _independent_set(g, s, block)
        if ind is not None:
            assert validate_witness(g, ind)
            return ind
        raise ExtractionFailure(
            "pipeline/chain", "block has neither a chain of length s nor an independent s-set",
            block=a, block_size=block_size, a_min=chain_params.a_min,
            budget_exhausted=isinstance(chain, BudgetExhausted),
        )
    parts = [list(c.a_blocks) for c in chains]
    bbars = [[c.b_union(i) for i in range(s)] for c in chains]
    return _close(g, s, t, n, parts, bbars, chains, rng_seed)


def remark_pipeline(
    g: OrderedGraph,
    s: int,
    t: int,
    n: int,
    r_blocks: int,
    *,
    budget: SearchBudget = DEFAULT_BUDGET,
    rng_seed: int = 0,
) -> PipelineResult:
    """Same argument with cliques instead of chains.

    Each of ``s*n`` consecutive windows must contain a clique of size
    ``s * r_blocks``; splitting it into ``s`` runs of ``r_blocks`` gives
    A-blocks that need no B-blocks between them.
    """
    if s < 2 or r_blocks < 1:
        raise PreconditionError("need s >= 2 and r_blocks >= 1")
    N = g.n_vertices
    width = N // (s * n)
    if width < 1:
        raise PreconditionError(f"need N >= s*n = {s * n}")
    parts, bbars = [], []
    for a in range(s * n):
        window = range(a * width, (a + 1) * width)
        clique = find_clique(g, s * r_blocks, budget, within=window)
        if clique is None:
            ind = _independent_set(g, s, window)
            if ind is not None:
                assert validate_witness(g, ind)
                return ind
            raise ExtractionFailure(
                "remark/window", "window has neither the clique nor an independent s-set",
                window=a, width=width, clique_size=s * r_blocks,
            )
        vs = clique.vertices
        parts.append([vs[k * r_blocks : (k + 1) * r_blocks] for k in range(s)])
        bbars.append([() for _ in range(s)])
    return _close(g, s, t, n, parts, bbars, (), rng_seed)


def _close(
    g: OrderedGraph,
    s: int,
    t: int,
    n: int,
    parts: Sequence[Sequence[Sequence[int]]],
    bbars: Sequence[Sequence[Sequence[int]]],
    chains,
    rng_seed: int,
) -> PipelineResult:
    # parts[a][k] is A-block k+1 of block a; bbars[a][k] the B-vertices after it
    table = PathPowerTable(g.rows, g.n_vertices, t)
    values: dict[tuple[int, int], int] = {}
    paths: dict[tuple[int, int], Witness] = {}
    for a in range(s * n):
        for i in range(1, s):
            length, w = table.longest(parts[a][s - i - 1])
            if length >= n:
                out = Witness(PathPower(n, t), w.vertices[:n])
                assert validate_witness(g, out)
                return out
            values[(i, a)] = length
            paths[(i, a)] = w
    ftable = FTable(values, tuple(chains))
    fs = [{a: values[(i, a)] for a in range(s * n)} for i in range(1, s)]
    xs = select_decreasing_positions(fs, range(s * n), n)

    V = [parts[xs[i - 1]][s - i] for i in range(1, s + 1)]
    i0, j0, Ti, Tj = clique_pair_across_parts(g, V, t, rng_seed=rng_seed)
    i, j = i0 + 1, j0 + 1
    a_i, a_j = xs[i - 1], xs[j - 1]
    S = paths[(i, a_i)].vertices
    path = sorted(set(S) | set(bbars[a_i][s - i - 1]) | set(Ti) | set(Tj))
    w = Witness(PathPower(len(path), t), tuple(path))
    assert validate_witness(g, w) and len(w) > values[(i, a_i)]
    f_jm1_aj = values[(j - 1, a_j)]
    assert f_jm1_aj >= len(w)

    broken = "none"
    for k in range(i, j - 1):
        if not values[(k, xs[k - 1])] > values[(k + 1, xs[k])]:
            broken = f"f_{k}(a_{k}) > f_{k + 1}(a_{k + 1})"
            break
    else:
        if not values[(j - 1, xs[j - 2])] >= f_jm1_aj:
            broken = f"f_{j - 1}(a_{j - 1}) >= f_{j - 1}(a_{j})"
    cert = ContradictionCertificate(i, j, a_i, a_j, w, values[(i, a_i)], f_jm1_aj, tuple(xs), broken, ftable)
    assert validate_certificate(g, cert)
    return cert
