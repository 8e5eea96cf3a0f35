from __future__ import annotations

from typing import Mapping, Sequence, Union

from .failures import PreconditionError

Values = Union[Sequence[int], Mapping[int, int]]


def select_decreasing_positions(fs: Sequence[Values], positions: Sequence[int], n: int) -> tuple[int, ...]:
    """Positions ``x_1 < ... < x_s`` with ``f_i(x_i) >= f_i(x_{i+1})`` for every ``i``.

    ``fs`` holds the ``s - 1`` functions, each indexable by position, with
    values in ``1..n``; ``positions`` is the increasing domain and needs at
    least ``s * n`` elements.

    Recursive construction: the record sequence of ``f_1`` (each term the
    first later position where ``f_1`` strictly increases) has at most ``n``
    terms. Recurse on ``f_2, ...`` over the remaining positions, then take
    ``x_1`` as the last record before ``x_2``; ``f_1`` cannot have risen
    between them or another record would sit there.
    """
    s = len(fs) + 1
    positions = list(positions)
    if any(a >= b for a, b in zip(positions, positions[1:])):
        raise PreconditionError("positions must be strictly increasing")
    if len(positions) < s * n:
        raise PreconditionError(f"need at least s*n={s * n} positions, got {len(positions)}")
    for f in fs:
        for x in positions:
            if not 1 <= f[x] <= n:
                raise PreconditionError(f"value f({x})={f[x]} outside 1..{n}")
    return _select(list(fs), positions)


def _select(fs: list[Values], positions: list[int]) -> tuple[int, ...]:
    if not fs:
        return (positions[0],)
    f1 = fs[0]
    records = [positions[0]]
    for x in positions[1:]:
        if f1[x] > f1[records[-1]]:
            records.append(x)
    taken = set(records)
    rest = _select(fs[1:], [x for x in positions if x not in taken])
    x2 = rest[0]
    x1 = max(y for y in records if y < x2)
    assert f1[x1] >= f1[x2]
    return (x1, *rest)
