"""Exact evaluation of the bound formulas, thresholds and lower-bound constructions.

Everything here is integer or :class:`fractions.Fraction` arithmetic. Where a
formula has a real exponent the value is made exact by integer roots, and the
result records what was done in ``flags``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Mapping

from .core import EdgeColoring

# Known classical two-colour Ramsey numbers R(a, b), a <= b, beyond the trivial rows.
_EXACT_RAMSEY = {
    (3, 3): 6,
    (3, 4): 9,
    (3, 5): 14,
    (3, 6): 18,
    (3, 7): 23,
    (3, 8): 28,
    (3, 9): 36,
    (4, 4): 18,
    (4, 5): 25,
}


@dataclass(frozen=True)
class RamseyValue:
    value: int
    exact: bool


class RamseyTable:
    """Classical ``R(a, b)``: exact where known, else ``C(a+b-2, a-1)``, flagged."""

    def __init__(self, extra: Mapping[tuple[int, int], int] | None = None):
        self._exact = dict(_EXACT_RAMSEY)
        for (a, b), v in (extra or {}).items():
            self._exact[(min(a, b), max(a, b))] = v

    def __call__(self, a: int, b: int) -> RamseyValue:
        if a < 1 or b < 1:
            raise ValueError("Ramsey arguments must be positive")
        a, b = min(a, b), max(a, b)
        if a == 1:
            return RamseyValue(1, True)
        if a == 2:
            return RamseyValue(b, True)
        if (a, b) in self._exact:
            return RamseyValue(self._exact[(a, b)], True)
        return RamseyValue(binomial_ramsey_bound(a, b), False)

    def exact_pairs(self) -> list[tuple[int, int]]:
        return sorted(self._exact)


def binomial_ramsey_bound(a: int, b: int) -> int:
    return comb(a + b - 2, a - 1)


RAMSEY = RamseyTable()


# ---------------------------------------------------------------------------
# bound formulas
# ---------------------------------------------------------------------------

# parameters each formula needs; "linear" marks formulas of the form K * n
FORMULAS: dict[str, tuple[tuple[str, ...], bool]] = {
    "thm11": (("C", "n", "eps"), False),
    "thm12": (("C", "n", "t"), False),
    "thm13": (("C", "s", "t", "n"), True),
    "thm13_internal": (("s", "t", "n"), True),
    "gjs_prior": (("s", "t", "n"), True),
    "remark": (("s", "t", "n"), True),
    "lemma33_threshold": (("s", "t"), False),
    "lemma32_threshold": (("s", "t"), False),
    "lemma35_threshold": (("s", "t"), False),
    "lemma37_threshold": (("s", "t"), False),
    "thm41": (("C", "D", "r", "n"), False),
    "thm42": (("C", "D", "r", "n"), False),
}


@dataclass(frozen=True)
class BoundFormula:
    id: str
    parameters: Mapping[str, int | Fraction | str]

    def __post_init__(self):
        if self.id not in FORMULAS:
            raise ValueError(f"unknown formula {self.id!r}; known: {', '.join(FORMULAS)}")
        missing = [p for p in FORMULAS[self.id][0] if p not in self.parameters]
        if missing:
            raise ValueError(f"{self.id} is missing parameter(s): {', '.join(missing)}")

    @property
    def linear_in_n(self) -> bool:
        return FORMULAS[self.id][1]


@dataclass(frozen=True)
class BoundValue:
    value: int
    flags: tuple[str, ...] = field(default=())

    @property
    def digits(self) -> int:
        return len(str(self.value))


def _int(params, name) -> int:
    v = params[name]
    if isinstance(v, Fraction):
        if v.denominator != 1:
            raise ValueError(f"{name} must be an integer")
        return int(v)
    return int(v)


def _frac(params, name) -> Fraction:
    return Fraction(params[name])


def iroot_ceil(x: int, k: int) -> int:
    """Smallest integer ``y`` with ``y**k >= x`` (``x >= 0``)."""
    if x <= 1:
        return x
    y = 1 << -(-x.bit_length() // k)
    while True:
        # Newton step from above
        z = ((k - 1) * y + x // y ** (k - 1)) // k
        if z >= y:
            break
        y = z
    while y**k < x:
        y += 1
    while y > 0 and (y - 1) ** k >= x:
        y -= 1
    return y


def ceil_log2_int(x: int) -> int:
    """Exact ``ceil(log2 x)`` for integer ``x >= 1``."""
    return (x - 1).bit_length()


def eval_bound(f: BoundFormula, table: RamseyTable = RAMSEY) -> BoundValue:
    p = f.parameters
    flags: list[str] = []
    if f.id == "thm11":
        # C * n^(4 + eps), rounded up exactly
        C, n, eps = _frac(p, "C"), _int(p, "n"), _frac(p, "eps")
        if eps <= 0:
            raise ValueError("eps must be positive")
        expo = 4 + eps
        # ceil(C * n^expo) = ceil((C_num^q * n^(p) / C_den^q)^(1/q))
        q = expo.denominator
        num = C.numerator**q * n**expo.numerator
        den = C.denominator**q
        value = iroot_ceil(-(-num // den), q)
        flags.append("ceiling")
        return BoundValue(value, tuple(flags))
    if f.id == "thm12":
        C, n, t = _int(p, "C"), _int(p, "n"), _int(p, "t")
        return BoundValue(n ** (C * t))
    if f.id == "thm13":
        C, s, t, n = _int(p, "C"), _int(p, "s"), _int(p, "t"), _int(p, "n")
        r = table(s, t)
        if not r.exact:
            flags.append("ramsey_upper_bound")
        return BoundValue(r.value**C * n, tuple(flags))
    if f.id == "thm13_internal":
        s, t, n = _int(p, "s"), _int(p, "t"), _int(p, "n")
        return BoundValue(comb(s + t, s) ** 300 * s * n)
    if f.id == "gjs_prior":
        s, t, n = _int(p, "s"), _int(p, "t"), _int(p, "n")
        return BoundValue((24 * s**3) ** (s * t) * n)
    if f.id == "remark":
        s, t, n = _int(p, "s"), _int(p, "t"), _int(p, "n")
        r = comb(s + t, s) ** 10
        rv = table(s * r, s)
        if not rv.exact:
            flags.append("ramsey_upper_bound")
        return BoundValue(rv.value * s * n, tuple(flags))
    if f.id == "lemma33_threshold":
        return BoundValue(comb(_int(p, "s") + _int(p, "t"), _int(p, "s")) ** 300)
    if f.id == "lemma32_threshold":
        return BoundValue(comb(_int(p, "s") + _int(p, "t"), _int(p, "s")) ** 10)
    if f.id == "lemma35_threshold":
        return BoundValue(comb(_int(p, "s") + _int(p, "t"), _int(p, "s")) ** 8)
    if f.id == "lemma37_threshold":
        return BoundValue(_int(p, "s") ** (150 * _int(p, "t")))
    if f.id in ("thm41", "thm42"):
        # D * n^(C r log2 r); the exponent is replaced by its exact ceiling
        C, D, r, n = _int(p, "C"), _int(p, "D"), _int(p, "r"), _int(p, "n")
        if f.id == "thm42":
            # tournament version: 2r colours in the reduction, C' = 4C
            C = 4 * C
            flags.append("C_prime_is_4C")
        expo = ceil_log2_int(r ** (C * r))
        if (r & (r - 1)) != 0:
            flags.append("exponent_ceiling_log2")
        return BoundValue(D * n**expo, tuple(flags))
    raise AssertionError(f.id)


def lower_bound_path_vs_clique(s: int, t: int, n: int, table: RamseyTable = RAMSEY) -> tuple[Fraction, bool]:
    """The quantity ``(R(s+1, t+1) - 1) (n - 1) / t`` as stated, plus its exactness flag."""
    r = table(s + 1, t + 1)
    return Fraction((r.value - 1) * (n - 1), t), r.exact


# ---------------------------------------------------------------------------
# Kővári–Sós–Turán threshold
# ---------------------------------------------------------------------------


def kst_exceeds(t: int, lam: Fraction, m: int) -> bool:
    """Whether ``lam * m^2`` strictly exceeds the K_{t,t}-free edge bound at part size ``m``.

    The bound is ``(t-1)^(1/t) (m-t+1) m^(1-1/t) + (t-1) m``; both sides are
    compared exactly by moving the linear term over and raising to power t.
    """
    lhs = lam * m * m - (t - 1) * m
    if lhs <= 0:
        return False
    if t == 1:
        return True
    # lhs > (t-1)^(1/t) (m-t+1) m^((t-1)/t)  <=>  lhs^t > (t-1) (m-t+1)^t m^(t-1)
    return lhs**t > (t - 1) * Fraction(m - t + 1) ** t * m ** (t - 1)


def kst_bound_value(t: int, m: int) -> float:
    """Floating value of the K_{t,t}-free edge bound; for reporting only."""
    return (t - 1) ** (1 / t) * (m - t + 1) * m ** (1 - 1 / t) + (t - 1) * m


def kst_min_part_size(t: int, lam) -> int:
    lam = Fraction(lam)
    if not 0 < lam < 1:
        raise ValueError("lambda must lie in (0, 1)")
    if t < 1:
        raise ValueError("t must be >= 1")
    m = t
    while not kst_exceeds(t, lam, m):
        m += 1
    return m


# ---------------------------------------------------------------------------
# length inequality for the s <= t^2 chain recursion
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class InequalityCheck:
    holds: bool
    lhs: Fraction
    rhs: int


def check_chain_inequality(s: int, t: int, l: int) -> InequalityCheck:
    """``s^2 t / (s+t)^3 * C(t+l, t)^50  >=  C(t + ceil(2l/3), t)^50``, exactly."""
    if not (2 <= l <= s <= t * t):
        raise ValueError(f"need 2 <= l <= s <= t^2, got s={s}, t={t}, l={l}")
    lhs = Fraction(s * s * t, (s + t) ** 3) * comb(t + l, t) ** 50
    rhs = comb(t + -(-2 * l // 3), t) ** 50
    # cross-multiplied integer comparison
    holds = lhs.numerator >= rhs * lhs.denominator
    return InequalityCheck(holds, lhs, rhs)


# ---------------------------------------------------------------------------
# lower-bound constructions
# ---------------------------------------------------------------------------


def blowup_construction(base: EdgeColoring, block_size: int, intra_color: int) -> EdgeColoring:
    """Replace each base vertex by an interval of ``block_size`` vertices.

    Vertex ``i`` lies in block ``i // block_size``; pairs inside a block get
    ``intra_color`` and pairs across blocks copy the base colour.
    """
    if base.n_colors != 2:
        raise ValueError("base must be a two-colouring")
    if block_size < 1:
        raise ValueError("block_size must be >= 1")
    b = block_size
    return EdgeColoring.from_function(
        base.n_vertices * b, 2,
        lambda u, v: intra_color if u // b == v // b else base.color(u // b, v // b),
    )


def interleaved_construction(base: EdgeColoring, copies: int, same_vertex_color: int = 0) -> EdgeColoring:
    """Lay ``copies`` copies of ``base`` one after another.

    Vertex ``x`` is copy ``x // m`` of base vertex ``x % m``. Two copies of
    the same base vertex get ``same_vertex_color``; everything else copies
    the base colour. With a base that has no red ``K_{t+1}`` and no blue
    ``K_s`` this has no blue ``K_s``, and a red ``P^t`` takes at most ``t``
    vertices from each copy, so at most ``t * copies`` in total.
    """
    if base.n_colors != 2:
        raise ValueError("base must be a two-colouring")
    if copies < 1:
        raise ValueError("copies must be >= 1")
    m = base.n_vertices
    return EdgeColoring.from_function(
        m * copies, 2,
        lambda u, v: same_vertex_color if u % m == v % m else base.color(u % m, v % m),
    )


@dataclass(frozen=True)
class LowerBoundColoring:
    coloring: EdgeColoring
    base: EdgeColoring
    copies: int
    method: str


def lower_bound_coloring(s: int, t: int, n: int, table: RamseyTable = RAMSEY) -> LowerBoundColoring:
    """A colouring of ``(R(s, t+1) - 1) * floor((n-1)/t)`` vertices with no red ``P_n^t`` and no blue ``K_s``.

    The base colouring (no red ``K_{t+1}``, no blue ``K_s``) is found by
    exhaustive search, so ``R(s, t+1)`` must be an exact table entry. For
    ``t = 1`` interval blocks are used, otherwise interleaved copies.
    """
    from .core import Clique
    from .exact import AvoidanceInstance, find_avoiding_coloring

    if s < 2 or t < 1 or n < 2:
        raise ValueError("need s >= 2, t >= 1, n >= 2")
    r = table(s, t + 1)
    if not r.exact:
        raise ValueError(f"R({s},{t + 1}) is not known exactly")
    copies = (n - 1) // t
    if copies < 1:
        raise ValueError("need n - 1 >= t")
    m = r.value - 1
    if m < 2:
        base = EdgeColoring.from_pairs(m, 2, ())
    else:
        base = find_avoiding_coloring(AvoidanceInstance(m, Clique(t + 1), Clique(s)))
        if base is None:
            raise AssertionError(f"no base colouring on R({s},{t + 1}) - 1 = {m} vertices")
    if t == 1:
        return LowerBoundColoring(blowup_construction(base, copies, 0), base, copies, "blowup")
    return LowerBoundColoring(interleaved_construction(base, copies), base, copies, "interleaved")
