"""Coloured tournaments, their reduction to ordered colourings, and directed path powers.

A pair ``x < y`` of colour ``c`` becomes colour ``2c`` when ``x -> y`` and
``2c + 1`` when ``y -> x``. A monotone path power in class ``2c`` is already
a directed one; in class ``2c + 1`` it is one when read backwards.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Sequence

from .core import EdgeColoring, FormatError, mask_of
from .finders import longest_path_power


@dataclass(frozen=True)
class Tournament:
    """``out_rows[u]`` has bit ``v`` set when ``u -> v``."""

    n_vertices: int
    out_rows: tuple[int, ...]

    def __post_init__(self):
        n = self.n_vertices
        if len(self.out_rows) != n:
            raise ValueError("need one row per vertex")
        for u in range(n):
            if self.out_rows[u] >> u & 1:
                raise ValueError(f"vertex {u} beats itself")
            if self.out_rows[u] >> n:
                raise ValueError(f"row {u} has bits beyond n")
            for v in range(u + 1, n):
                if (self.out_rows[u] >> v & 1) == (self.out_rows[v] >> u & 1):
                    raise ValueError(f"pair ({u},{v}) needs exactly one direction")

    @classmethod
    def from_forward(cls, n: int, forward) -> Tournament:
        """``forward(u, v)`` for ``u < v`` says whether ``u -> v``."""
        rows = [0] * n
        for u, v in combinations(range(n), 2):
            if forward(u, v):
                rows[u] |= 1 << v
            else:
                rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @classmethod
    def transitive(cls, n: int) -> Tournament:
        return cls.from_forward(n, lambda u, v: True)

    @classmethod
    def random(cls, n: int, rng) -> Tournament:
        return cls.from_forward(n, lambda u, v: rng.random() < 0.5)

    def beats(self, u: int, v: int) -> bool:
        return bool(self.out_rows[u] >> v & 1)

    def reversed(self) -> Tournament:
        return Tournament.from_forward(self.n_vertices, lambda u, v: not self.beats(u, v))

    def sub(self, k: int) -> Tournament:
        """The tournament on the first ``k`` vertices."""
        keep = mask_of(range(k))
        return Tournament(k, tuple(r & keep for r in self.out_rows[:k]))


@dataclass(frozen=True)
class PairColoring:
    """An ``r``-colouring of pairs, stored in lexicographic pair order; ``r = 1`` is allowed."""

    n_vertices: int
    n_colors: int
    colors: tuple[int, ...]

    def __post_init__(self):
        if self.n_colors < 1:
            raise ValueError("need at least one colour")
        if len(self.colors) != comb(self.n_vertices, 2):
            raise ValueError("need one colour per pair")
        if any(not 0 <= c < self.n_colors for c in self.colors):
            raise ValueError("colour out of range")

    @classmethod
    def from_function(cls, n: int, n_colors: int, color_of) -> PairColoring:
        return cls(n, n_colors, tuple(color_of(u, v) for u, v in combinations(range(n), 2)))

    @classmethod
    def random(cls, n: int, n_colors: int, rng) -> PairColoring:
        return cls.from_function(n, n_colors, lambda u, v: rng.randrange(n_colors))

    def color(self, u: int, v: int) -> int:
        if u > v:
            u, v = v, u
        n = self.n_vertices
        # index of (u, v) in lexicographic order
        return self.colors[u * n - u * (u + 1) // 2 + (v - u - 1)]

    def sub(self, k: int) -> PairColoring:
        return PairColoring.from_function(k, self.n_colors, self.color)


def class_id(color: int, forward: bool) -> int:
    return 2 * color + (0 if forward else 1)


def reduce_tournament(t: Tournament, chi: PairColoring) -> EdgeColoring:
    if chi.n_vertices != t.n_vertices:
        raise ValueError("colouring and tournament sizes differ")
    return EdgeColoring.from_function(
        t.n_vertices, 2 * chi.n_colors, lambda u, v: class_id(chi.color(u, v), t.beats(u, v))
    )


@dataclass(frozen=True)
class DirectedWitness:
    vertices: tuple[int, ...]
    power: int
    color: int

    def __len__(self):
        return len(self.vertices)

    def to_dict(self) -> dict:
        return {"vertices": list(self.vertices), "power": self.power, "color": self.color}


def validate_directed_witness(t: Tournament, chi: PairColoring, w: DirectedWitness) -> bool:
    vs = w.vertices
    if len(set(vs)) != len(vs) or any(not 0 <= v < t.n_vertices for v in vs):
        return False
    for i in range(len(vs)):
        for j in range(i + 1, min(len(vs), i + w.power + 1)):
            if not t.beats(vs[i], vs[j]) or chi.color(vs[i], vs[j]) != w.color:
                return False
    return True


@dataclass(frozen=True)
class DirectedSearch:
    """Best witness plus the exact longest length in every class ``2c + d``."""

    witness: DirectedWitness | None
    class_lengths: tuple[int, ...]
    reached_target: bool

    def to_dict(self) -> dict:
        return {
            "witness": None if self.witness is None else self.witness.to_dict(),
            "class_lengths": list(self.class_lengths),
            "reached_target": self.reached_target,
        }


def find_directed_path_power(t: Tournament, chi: PairColoring, power: int, n_target: int) -> DirectedSearch:
    """Longest monochromatic directed ``power``-th path power, class by class.

    Every class is solved exactly. The witness comes from the smallest class
    reaching ``n_target`` (cut to that length), else from a longest class.
    """
    if power < 1 or n_target < 1:
        raise ValueError("power and n_target must be >= 1")
    red = reduce_tournament(t, chi)
    lengths, paths = [], []
    for k in range(red.n_colors):
        length, w = longest_path_power(red, power, color=k)
        lengths.append(length)
        paths.append(w.vertices)
    if t.n_vertices == 0:
        return DirectedSearch(None, tuple(lengths), False)
    hit = [k for k, L in enumerate(lengths) if L >= n_target]
    if hit:
        k = hit[0]
        vs = paths[k][:n_target]
    else:
        k = max(range(len(lengths)), key=lambda i: (lengths[i], -i))
        vs = paths[k]
    if k % 2:
        vs = vs[::-1]
    w = DirectedWitness(tuple(vs), power, k // 2)
    assert validate_directed_witness(t, chi, w)
    return DirectedSearch(w, tuple(lengths), bool(hit))


def to_trn(t: Tournament, chi: PairColoring) -> str:
    lines = [f"trn {t.n_vertices}"]
    lines.extend(
        f"{u} {v} {int(t.beats(u, v))} {chi.color(u, v)}" for u, v in combinations(range(t.n_vertices), 2)
    )
    return "\n".join(lines) + "\n"


def from_trn(text: str, n_colors: int | None = None) -> tuple[Tournament, PairColoring]:
    """Parse ``.trn`` text; ``r`` defaults to one more than the largest colour used."""
    lines = text.splitlines()
    if not lines:
        raise FormatError("empty tournament file", 1)
    head = lines[0].split()
    if len(head) != 2 or head[0] != "trn" or not head[1].isdigit():
        raise FormatError("header must be 'trn <N>'", 1)
    n = int(head[1])
    fwd: dict[tuple[int, int], bool] = {}
    col: dict[tuple[int, int], int] = {}
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        parts = line.split()
        if len(parts) != 4:
            raise FormatError("expected 'u v d c'", lineno)
        try:
            u, v, d, c = map(int, parts)
        except ValueError:
            raise FormatError("non-integer field", lineno) from None
        if not (0 <= u < v < n):
            raise FormatError(f"need 0 <= u < v < {n}", lineno)
        if d not in (0, 1):
            raise FormatError("direction must be 0 or 1", lineno)
        if c < 0:
            raise FormatError("colour must be >= 0", lineno)
        if (u, v) in fwd:
            raise FormatError(f"pair ({u},{v}) listed twice", lineno)
        fwd[(u, v)] = d == 1
        col[(u, v)] = c
    if len(fwd) != comb(n, 2):
        raise FormatError(f"expected {comb(n, 2)} pairs, found {len(fwd)}", len(lines))
    r = n_colors if n_colors is not None else max(col.values(), default=0) + 1
    if any(c >= r for c in col.values()):
        raise FormatError(f"colour out of range for r = {r}", len(lines))
    return Tournament.from_forward(n, lambda u, v: fwd[(u, v)]), PairColoring.from_function(n, r, lambda u, v: col[(u, v)])


def nested_lengths(t: Tournament, chi: PairColoring, power: int, sizes: Sequence[int]) -> list[int]:
    """Best achieved length on the prefixes of the given sizes."""
    return [max(find_directed_path_power(t.sub(k), chi.sub(k), power, k or 1).class_lengths, default=0) for k in sizes]
