"""Ordered graphs, edge colorings, patterns, witnesses and chains.

Vertices are always ``0..n-1`` with the integer order. Adjacency is kept as
one Python ``int`` bit row per vertex, which makes neighbourhood intersection
a single ``&``.

Containment is non-induced: a witness only has to map pattern edges onto host
edges (of the requested colour); pattern non-edges are unconstrained.

An :class:`OrderedGraph` doubles as a two-colouring of the complete graph:
colour 0 (red) is "edge" and colour 1 (blue) is "non-edge". This is how a
"red path power or blue clique" statement about a graph reads, so an
independent set of ``g`` is a colour-1 clique witness.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from math import comb
from typing import Iterable, Iterator, Sequence, Union

RED = 0
BLUE = 1


class FormatError(ValueError):
    """Malformed text input; carries the offending 1-based line number."""

    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class InvalidWitnessError(ValueError):
    """A witness refers to vertices the host does not have."""


def bits(mask: int) -> Iterator[int]:
    """Yield set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


# ---------------------------------------------------------------------------
# graphs and colourings
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OrderedGraph:
    n_vertices: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if self.n_vertices < 0:
            raise ValueError("n_vertices must be non-negative")
        if len(self.rows) != self.n_vertices:
            raise ValueError("need one adjacency row per vertex")
        full = (1 << self.n_vertices) - 1
        for v, row in enumerate(self.rows):
            if row & ~full:
                raise ValueError(f"row {v} points outside the vertex range")
            if row >> v & 1:
                raise ValueError(f"self-loop at {v}")
            for u in bits(row):
                if not self.rows[u] >> v & 1:
                    raise ValueError(f"adjacency not symmetric at ({v},{u})")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> OrderedGraph:
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range for n={n}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @classmethod
    def complete(cls, n: int) -> OrderedGraph:
        full = (1 << n) - 1
        return cls(n, tuple(full & ~(1 << v) for v in range(n)))

    @classmethod
    def empty(cls, n: int) -> OrderedGraph:
        return cls(n, (0,) * n)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def edges(self) -> Iterator[tuple[int, int]]:
        for u, row in enumerate(self.rows):
            for v in bits(row >> (u + 1)):
                yield u, u + 1 + v

    @property
    def n_edges(self) -> int:
        return sum(r.bit_count() for r in self.rows) // 2

    def is_clique(self, vertices: Sequence[int]) -> bool:
        m = mask_of(vertices)
        return all((self.rows[v] | 1 << v) & m == m for v in vertices)

    def common_neighbors(self, vertices: Iterable[int], within: int | None = None) -> int:
        m = (1 << self.n_vertices) - 1 if within is None else within
        for v in vertices:
            m &= self.rows[v]
        return m

    def to_og(self) -> str:
        lines = [f"og {self.n_vertices}"]
        lines.extend(f"{u} {v}" for u, v in self.edges())
        return "\n".join(lines) + "\n"

    @classmethod
    def from_og(cls, text: str) -> OrderedGraph:
        lines = text.splitlines()
        if not lines:
            raise FormatError("empty graph file", 1)
        head = lines[0].split()
        if len(head) != 2 or head[0] != "og":
            raise FormatError("expected header 'og <N>'", 1)
        n = _parse_int(head[1], 1)
        rows = [0] * n
        for lineno, line in enumerate(lines[1:], start=2):
            if not line.strip():
                continue
            parts = line.split()
            if len(parts) != 2:
                raise FormatError("expected 'u v'", lineno)
            u, v = (_parse_int(p, lineno) for p in parts)
            if not 0 <= u < v < n:
                raise FormatError(f"need 0 <= u < v < {n}, got {u} {v}", lineno)
            if rows[u] >> v & 1:
                raise FormatError(f"duplicate edge {u} {v}", lineno)
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))


@dataclass(frozen=True)
class EdgeColoring:
    """Total colouring of the pairs of an ordered complete graph.

    ``table[u][v]`` is the colour of ``{u, v}``; the diagonal holds -1.
    """

    n_vertices: int
    n_colors: int
    table: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.n_colors < 2:
            raise ValueError("need at least two colours")
        if len(self.table) != self.n_vertices:
            raise ValueError("table has wrong number of rows")
        for u, row in enumerate(self.table):
            if len(row) != self.n_vertices:
                raise ValueError(f"row {u} has wrong length")
            if row[u] != -1:
                raise ValueError("diagonal entries must be -1")
            for v in range(u + 1, self.n_vertices):
                c = row[v]
                if not 0 <= c < self.n_colors:
                    raise ValueError(f"colour {c} out of range at ({u},{v})")
                if self.table[v][u] != c:
                    raise ValueError(f"table not symmetric at ({u},{v})")

    @classmethod
    def from_function(cls, n: int, n_colors: int, color_of) -> EdgeColoring:
        table = [[-1] * n for _ in range(n)]
        for u, v in combinations(range(n), 2):
            table[u][v] = table[v][u] = color_of(u, v)
        return cls(n, n_colors, tuple(map(tuple, table)))

    @classmethod
    def from_pairs(cls, n: int, n_colors: int, colors: Sequence[int]) -> EdgeColoring:
        """Build from colours listed in lexicographic pair order."""
        if len(colors) != comb(n, 2):
            raise ValueError("need one colour per pair")
        it = iter(colors)
        table = [[-1] * n for _ in range(n)]
        for u, v in combinations(range(n), 2):
            table[u][v] = table[v][u] = next(it)
        return cls(n, n_colors, tuple(map(tuple, table)))

    @classmethod
    def monochromatic(cls, n: int, color: int = RED, n_colors: int = 2) -> EdgeColoring:
        return cls.from_function(n, n_colors, lambda u, v: color)

    @classmethod
    def from_graph(cls, g: OrderedGraph) -> EdgeColoring:
        """Edges red, non-edges blue."""
        return cls.from_function(g.n_vertices, 2, lambda u, v: RED if g.has_edge(u, v) else BLUE)

    @classmethod
    def random(cls, n: int, rng, n_colors: int = 2) -> EdgeColoring:
        return cls.from_function(n, n_colors, lambda u, v: rng.randrange(n_colors))

    def color(self, u: int, v: int) -> int:
        return self.table[u][v]

    def pair_colors(self) -> tuple[int, ...]:
        return tuple(self.table[u][v] for u, v in combinations(range(self.n_vertices), 2))

    @cached_property
    def class_rows(self) -> tuple[tuple[int, ...], ...]:
        out = [[0] * self.n_vertices for _ in range(self.n_colors)]
        for u, row in enumerate(self.table):
            for v, c in enumerate(row):
                if c >= 0:
                    out[c][u] |= 1 << v
        return tuple(tuple(r) for r in out)

    def to_ocg(self) -> str:
        lines = [f"ocg {self.n_vertices} {self.n_colors}"]
        lines.extend(f"{u} {v} {self.table[u][v]}" for u, v in combinations(range(self.n_vertices), 2))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_ocg(cls, text: str) -> EdgeColoring:
        lines = text.splitlines()
        if not lines:
            raise FormatError("empty colouring file", 1)
        head = lines[0].split()
        if len(head) != 3 or head[0] != "ocg":
            raise FormatError("expected header 'ocg <N> <r>'", 1)
        n, r = _parse_int(head[1], 1), _parse_int(head[2], 1)
        if r < 2:
            raise FormatError("need r >= 2", 1)
        table = [[-1] * n for _ in range(n)]
        seen = 0
        for lineno, line in enumerate(lines[1:], start=2):
            if not line.strip():
                continue
            parts = line.split()
            if len(parts) != 3:
                raise FormatError("expected 'u v c'", lineno)
            u, v, c = (_parse_int(p, lineno) for p in parts)
            if not 0 <= u < v < n:
                raise FormatError(f"need 0 <= u < v < {n}, got {u} {v}", lineno)
            if not 0 <= c < r:
                raise FormatError(f"colour {c} not in 0..{r - 1}", lineno)
            if table[u][v] != -1:
                raise FormatError(f"pair {u} {v} listed twice", lineno)
            table[u][v] = table[v][u] = c
            seen += 1
        if seen != comb(n, 2):
            raise FormatError(f"expected {comb(n, 2)} pairs, found {seen}", len(lines))
        return cls(n, r, tuple(map(tuple, table)))


Host = Union[OrderedGraph, EdgeColoring]


def class_rows(host: Host, color: int | None = None) -> tuple[int, ...]:
    """Adjacency rows of one colour class of ``host``.

    For a graph, ``None`` and ``0`` mean its edges and ``1`` its non-edges.
    """
    if isinstance(host, EdgeColoring):
        if color is None:
            raise ValueError("a colour is required when the host is a colouring")
        if not 0 <= color < host.n_colors:
            raise ValueError(f"colour {color} not in 0..{host.n_colors - 1}")
        return host.class_rows[color]
    if color in (None, RED):
        return host.rows
    if color == BLUE:
        return complement(host).rows
    raise ValueError(f"a graph host only has colours 0 and 1, got {color}")


def color_class(c: EdgeColoring, color: int) -> OrderedGraph:
    if not 0 <= color < c.n_colors:
        raise ValueError(f"colour {color} not in 0..{c.n_colors - 1}")
    return OrderedGraph(c.n_vertices, c.class_rows[color])


def complement(g: OrderedGraph) -> OrderedGraph:
    full = (1 << g.n_vertices) - 1
    return OrderedGraph(g.n_vertices, tuple(full & ~row & ~(1 << v) for v, row in enumerate(g.rows)))


# ---------------------------------------------------------------------------
# patterns
# ---------------------------------------------------------------------------


class Pattern:
    """Target ordered graph on vertices ``0..n_vertices-1``."""

    kind: str = ""

    @property
    def n_vertices(self) -> int:
        raise NotImplementedError

    def edges(self) -> list[tuple[int, int]]:
        raise NotImplementedError

    @cached_property
    def back_neighbors(self) -> tuple[tuple[int, ...], ...]:
        """For each pattern vertex, its neighbours that come earlier."""
        back = [[] for _ in range(self.n_vertices)]
        for i, j in self.edges():
            back[j].append(i)
        return tuple(tuple(sorted(b)) for b in back)

    def to_graph(self) -> OrderedGraph:
        return OrderedGraph.from_edges(self.n_vertices, self.edges())

    @property
    def spec(self) -> str:
        """The ``kind:a:b`` mini-language form."""
        return ":".join([self.kind, *map(str, self._params())])

    def to_dict(self) -> dict:
        return {"kind": self.kind, **dict(zip(self._fields, self._params()))}

    def _params(self) -> tuple[int, ...]:
        return tuple(getattr(self, f) for f in self._fields)

    _fields: tuple[str, ...] = ()


@dataclass(frozen=True)
class PathPower(Pattern):
    n: int
    t: int
    kind = "ppow"
    _fields = ("n", "t")

    def __post_init__(self):
        if self.n < 1 or self.t < 1:
            raise ValueError("path power needs n >= 1 and t >= 1")

    @property
    def n_vertices(self) -> int:
        return self.n

    def edges(self):
        return [(i, j) for j in range(self.n) for i in range(max(0, j - self.t), j)]


@dataclass(frozen=True)
class MonotonePath(Pattern):
    n: int
    kind = "mpath"
    _fields = ("n",)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("monotone path needs n >= 1")

    @property
    def n_vertices(self) -> int:
        return self.n

    def edges(self):
        return [(i, i + 1) for i in range(self.n - 1)]


@dataclass(frozen=True)
class Clique(Pattern):
    s: int
    kind = "clique"
    _fields = ("s",)

    def __post_init__(self):
        if self.s < 1:
            raise ValueError("clique needs s >= 1")

    @property
    def n_vertices(self) -> int:
        return self.s

    def edges(self):
        return list(combinations(range(self.s), 2))


@dataclass(frozen=True)
class QGraph(Pattern):
    """Monotone ``m``-path blown up into cliques: ends of size ``s``, middle of size ``t``."""

    m: int
    t: int
    s: int
    kind = "q"
    _fields = ("m", "t", "s")

    def __post_init__(self):
        if self.m < 2 or self.t < 1 or self.s < 1:
            raise ValueError("Q-graph needs m >= 2, t >= 1, s >= 1")

    @property
    def n_vertices(self) -> int:
        return 2 * self.s + (self.m - 2) * self.t

    def blocks(self) -> list[range]:
        return q_blocks(self.m, self.t, self.s)

    def edges(self):
        blocks = self.blocks()
        out = []
        for b in blocks:
            out.extend(combinations(b, 2))
        for b1, b2 in zip(blocks, blocks[1:]):
            out.extend((i, j) for i in b1 for j in b2)
        return sorted(out)


_KINDS = {cls.kind: cls for cls in (PathPower, MonotonePath, Clique, QGraph)}


def parse_pattern(text: str) -> Pattern:
    """Parse ``clique:s``, ``mpath:n``, ``ppow:n:t`` or ``q:m:t:s``."""
    kind, *args = text.strip().split(":")
    cls = _KINDS.get(kind)
    if cls is None:
        raise ValueError(f"unknown pattern kind {kind!r}")
    if len(args) != len(cls._fields):
        raise ValueError(f"{kind} takes {len(cls._fields)} parameter(s), got {len(args)}")
    try:
        values = [int(a) for a in args]
    except ValueError:
        raise ValueError(f"pattern parameters must be integers: {text!r}") from None
    return cls(*values)


def pattern_from_dict(d: dict) -> Pattern:
    cls = _KINDS.get(d.get("kind"))
    if cls is None:
        raise ValueError(f"unknown pattern kind {d.get('kind')!r}")
    return cls(*(int(d[f]) for f in cls._fields))


def q_blocks(m: int, t: int, s: int) -> list[range]:
    sizes = [s] + [t] * (m - 2) + [s]
    out, start = [], 0
    for size in sizes:
        out.append(range(start, start + size))
        start += size
    return out


def build_q_graph(m: int, t: int, s: int) -> OrderedGraph:
    if m < 2:
        raise ValueError("Q-graph needs at least two blocks")
    return QGraph(m, t, s).to_graph()


# ---------------------------------------------------------------------------
# witnesses
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Witness:
    pattern: Pattern
    vertices: tuple[int, ...]
    color: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(int(v) for v in self.vertices))

    def __len__(self):
        return len(self.vertices)

    def to_dict(self) -> dict:
        return {"pattern": self.pattern.to_dict(), "vertices": list(self.vertices), "color": self.color}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> Witness:
        color = d.get("color")
        return cls(pattern_from_dict(d["pattern"]), tuple(d["vertices"]), None if color is None else int(color))

    @classmethod
    def from_json(cls, text: str) -> Witness:
        return cls.from_dict(json.loads(text))


def validate_witness(host: Host, w: Witness) -> bool:
    n = host.n_vertices
    for v in w.vertices:
        if not 0 <= v < n:
            raise InvalidWitnessError(f"vertex {v} outside host range 0..{n - 1}")
    if len(w.vertices) != w.pattern.n_vertices:
        return False
    if any(a >= b for a, b in zip(w.vertices, w.vertices[1:])):
        return False
    rows = class_rows(host, w.color)
    vs = w.vertices
    return all(rows[vs[i]] >> vs[j] & 1 for i, j in w.pattern.edges())


# ---------------------------------------------------------------------------
# chains
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ChainParams:
    a_min: int
    t: int
    s: int

    def __post_init__(self):
        if self.a_min < 1 or self.t < 1 or self.s < 2:
            raise ValueError("chain parameters need a_min >= 1, t >= 1, s >= 2")

    @staticmethod
    def paper_a_min(s: int, t: int) -> int:
        """The full-scale lower bound on |A_i|, as an exact integer."""
        return comb(s + t, s) ** 10

    def to_dict(self) -> dict:
        return {"a_min": self.a_min, "t": self.t, "s": self.s}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> ChainParams:
        d = json.loads(text)
        return cls(int(d["a_min"]), int(d["t"]), int(d["s"]))


@dataclass(frozen=True)
class ChainLink:
    a: tuple[int, ...]
    bs: tuple[tuple[int, ...], ...] = ()


@dataclass(frozen=True)
class ChainWitness:
    """``A_1 < B_{1,1} < ... < A_k < B_{k,1} < ...`` as one link per A-block."""

    links: tuple[ChainLink, ...] = field(default_factory=tuple)

    @classmethod
    def build(cls, links: Iterable[tuple[Iterable[int], Iterable[Iterable[int]]]]) -> ChainWitness:
        return cls(tuple(ChainLink(tuple(sorted(a)), tuple(tuple(sorted(b)) for b in bs)) for a, bs in links))

    @property
    def k(self) -> int:
        return len(self.links)

    @property
    def a_blocks(self) -> list[tuple[int, ...]]:
        return [link.a for link in self.links]

    def b_union(self, i: int) -> tuple[int, ...]:
        """All B-vertices following ``A_{i+1}`` (0-based ``i``)."""
        return tuple(v for b in self.links[i].bs for v in b)

    def blocks(self) -> list[tuple[int, ...]]:
        out = []
        for link in self.links:
            out.append(link.a)
            out.extend(link.bs)
        return out

    def truncate(self, k: int) -> ChainWitness:
        """First ``k`` A-blocks, dropping the B-blocks after the last one."""
        if not 1 <= k <= self.k:
            raise ValueError(f"cannot truncate a length-{self.k} chain to {k}")
        links = list(self.links[:k])
        links[-1] = ChainLink(links[-1].a, ())
        return ChainWitness(tuple(links))

    def to_dict(self) -> dict:
        return {"links": [{"a": list(l.a), "b": [list(b) for b in l.bs]} for l in self.links]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> ChainWitness:
        return cls(tuple(ChainLink(tuple(l["a"]), tuple(tuple(b) for b in l["b"])) for l in d["links"]))

    @classmethod
    def from_json(cls, text: str) -> ChainWitness:
        return cls.from_dict(json.loads(text))


def validate_chain(g: OrderedGraph, c: ChainWitness, p: ChainParams) -> bool:
    n = g.n_vertices
    if c.k < 1:
        return False
    for block in c.blocks():
        for v in block:
            if not 0 <= v < n:
                raise InvalidWitnessError(f"vertex {v} outside host range 0..{n - 1}")
    blocks = c.blocks()
    if any(not b for b in blocks):
        return False
    for b in blocks:
        if any(x >= y for x, y in zip(b, b[1:])):
            return False
    if any(b1[-1] >= b2[0] for b1, b2 in zip(blocks, blocks[1:])):
        return False

    def complete_to(x, y):
        my = mask_of(y)
        return all(g.rows[v] & my == my for v in x)

    for i, link in enumerate(c.links):
        if len(link.a) < p.a_min:
            return False
        if i < c.k - 1 and not link.bs:
            return False
        for b in link.bs:
            if len(b) != p.t or not g.is_clique(b):
                return False
        if link.bs and not complete_to(link.a, link.bs[0]):
            return False
        if any(not complete_to(b1, b2) for b1, b2 in zip(link.bs, link.bs[1:])):
            return False
        if i < c.k - 1 and not complete_to(link.bs[-1], c.links[i + 1].a):
            return False
    return True


def _parse_int(token: str, lineno: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise FormatError(f"expected an integer, got {token!r}", lineno) from None
