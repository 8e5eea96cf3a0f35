from __future__ import annotations

from ..core import BLUE, RED, Clique, EdgeColoring, MonotonePath, Witness, validate_witness
from .failures import ExtractionFailure, PreconditionError


def erdos_szekeres_extract(c: EdgeColoring, s: int, n: int, *, check_threshold: bool = True) -> Witness:
    """Red ``K_s`` or blue monotone ``P_n`` in a red/blue colouring.

    Each vertex is labelled with the length of the longest blue monotone path
    ending at it. Two vertices with the same label must be joined in red, so
    if no label reaches ``n`` the largest label class is a red clique, and
    pigeonhole makes it big enough once ``N >= (s-1)(n-1)+1``.

    ``check_threshold=False`` attempts extraction below that size; it then
    raises :class:`ExtractionFailure` when neither object exists.
    """
    if c.n_colors != 2:
        raise PreconditionError("need a two-colouring")
    if s < 1 or n < 1:
        raise PreconditionError("need s >= 1 and n >= 1")
    N = c.n_vertices
    threshold = (s - 1) * (n - 1) + 1
    if check_threshold and N < threshold:
        raise PreconditionError(f"N={N} is below (s-1)(n-1)+1={threshold}")

    blue = c.class_rows[BLUE]
    label = [0] * N
    pred = [-1] * N
    for v in range(N):
        best, arg = 0, -1
        earlier = blue[v] & ((1 << v) - 1)
        while earlier:
            low = earlier & -earlier
            u = low.bit_length() - 1
            earlier ^= low
            if label[u] > best:
                best, arg = label[u], u
        label[v] = best + 1
        pred[v] = arg
        if label[v] >= n:
            path = [v]
            while len(path) < n:
                path.append(pred[path[-1]])
            w = Witness(MonotonePath(n), tuple(reversed(path)), BLUE)
            assert validate_witness(c, w)
            return w

    classes: dict[int, list[int]] = {}
    for v, lab in enumerate(label):
        classes.setdefault(lab, []).append(v)
    red = c.class_rows[RED]
    for members in classes.values():
        # equal labels force red: a blue edge u < v would give label[v] > label[u]
        for i, u in enumerate(members):
            for v in members[i + 1 :]:
                assert red[u] >> v & 1, f"equal-label vertices {u},{v} not red"
    lab, members = min(classes.items(), key=lambda kv: (-len(kv[1]), kv[0])) if classes else (0, [])
    if len(members) < s:
        raise ExtractionFailure(
            "erdos_szekeres", "no label reaches n and no label class has s vertices",
            N=N, threshold=threshold, largest_class=len(members),
        )
    w = Witness(Clique(s), tuple(members[:s]), RED)
    assert validate_witness(c, w)
    return w
