import math
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ordramsey.bounds import (
    FORMULAS,
    RAMSEY,
    BoundFormula,
    RamseyTable,
    binomial_ramsey_bound,
    blowup_construction,
    ceil_log2_int,
    check_chain_inequality,
    eval_bound,
    interleaved_construction,
    iroot_ceil,
    kst_exceeds,
    kst_min_part_size,
    lower_bound_coloring,
    lower_bound_path_vs_clique,
)
from ordramsey.core import Clique, EdgeColoring, PathPower
from ordramsey.exact import ordered_ramsey_number
from ordramsey.core import MonotonePath
from ordramsey.finders import find_ordered_embedding

from . import oracles

BASE_PARAMS = {"C": 2, "D": 3, "r": 3, "n": 5, "s": 2, "t": 2, "eps": 1}


def ev(fid, **kw):
    params = {k: BASE_PARAMS[k] for k in FORMULAS[fid][0]}
    params.update(kw)
    return eval_bound(BoundFormula(fid, params))


class TestIntegerHelpers:
    @given(st.integers(0, 10**40), st.integers(1, 7))
    def test_iroot_ceil(self, x, k):
        y = iroot_ceil(x, k)
        assert y**k >= x and (y == 0 or (y - 1) ** k < x)

    @given(st.integers(1, 10**30))
    def test_ceil_log2(self, x):
        e = ceil_log2_int(x)
        assert 2**e >= x and (e == 0 or 2 ** (e - 1) < x)


class TestRamseyTable:
    def test_trivial_rows(self):
        assert RAMSEY(1, 7) == RAMSEY(7, 1)
        assert RAMSEY(2, 9).value == 9 and RAMSEY(2, 9).exact

    def test_fallback_flagged_and_dominates(self):
        r = RAMSEY(5, 5)
        assert not r.exact and r.value == math.comb(8, 4)
        for a, b in RAMSEY.exact_pairs():
            assert binomial_ramsey_bound(a, b) >= RAMSEY(a, b).value

    def test_extra_values(self):
        t = RamseyTable({(5, 4): 25})
        assert t(4, 5).value == 25 and t(4, 5).exact

    def test_small_entries_recertified(self):
        # R(3,3) by exhaustive search over K_5 / K_6
        assert oracles.ramsey_classical_avoider_exists(5, 3, 3)
        assert not oracles.ramsey_classical_avoider_exists(6, 3, 3)
        assert RAMSEY(3, 3).value == 6


class TestFormulas:
    def test_unknown_and_missing(self):
        with pytest.raises(ValueError):
            BoundFormula("thm99", {})
        with pytest.raises(ValueError):
            BoundFormula("thm12", {"C": 1, "n": 2})

    def test_explicit_clique_path_bound_digits(self):
        v = ev("thm13_internal", s=2, t=2, n=1)
        assert v.digits == 234
        assert v.digits == math.floor(300 * math.log10(6) + math.log10(2)) + 1

    def test_path_vs_path_integer_exponent(self):
        assert ev("thm11", C=3, n=4, eps=1).value == 3 * 4**5

    def test_path_vs_path_fractional_exponent(self):
        v = ev("thm11", C=Fraction(3, 2), n=7, eps=Fraction(1, 2))
        # smallest y with y^2 >= (3/2)^2 * 7^9
        target = Fraction(9, 4) * 7**9
        assert v.value**2 >= target and (v.value - 1) ** 2 < target
        assert "ceiling" in v.flags

    def test_power_vs_clique(self):
        assert ev("thm12", C=2, n=3, t=2).value == 81

    def test_clique_bound_uses_table(self):
        assert ev("thm13", C=3, s=3, t=4, n=2).value == 9**3 * 2
        assert ev("thm13", C=1, s=5, t=5, n=1).flags == ("ramsey_upper_bound",)

    def test_prior_bound(self):
        assert ev("gjs_prior", s=2, t=1, n=3).value == (24 * 8) ** 2 * 3

    def test_remark(self):
        r = math.comb(3, 2) ** 10
        # R(2r, 2) = 2r is exact
        assert ev("remark", s=2, t=1, n=1).value == 2 * r * 2
        assert ev("remark", s=2, t=1, n=1).flags == ()
        r3 = math.comb(4, 3) ** 10
        v = ev("remark", s=3, t=1, n=1)
        assert v.value == math.comb(3 * r3 + 1, 2) * 3 and "ramsey_upper_bound" in v.flags

    def test_thresholds(self):
        assert ev("lemma33_threshold", s=2, t=2).value == 6**300
        assert ev("lemma32_threshold", s=2, t=2).value == 6**10
        assert ev("lemma35_threshold", s=2, t=2).value == 6**8
        assert ev("lemma37_threshold", s=3, t=2).value == 3**300

    def test_multicolor_bounds(self):
        v = ev("thm41", C=1, D=1, r=4, n=2)
        assert v.value == 2**8 and v.flags == ()
        v = ev("thm41", C=1, D=2, r=3, n=2)
        assert v.value == 2 * 2 ** math.ceil(3 * math.log2(3)) and "exponent_ceiling_log2" in v.flags
        assert ev("thm42", C=1, D=1, r=4, n=2).value == 2**32
        assert "C_prime_is_4C" in ev("thm42").flags

    @pytest.mark.parametrize("fid", [f for f, (_, lin) in FORMULAS.items() if lin])
    @pytest.mark.parametrize("n", [1, 2, 7])
    def test_linear_formulas_double(self, fid, n):
        assert ev(fid, n=2 * n).value == 2 * ev(fid, n=n).value

    def test_power_formulas_scale(self):
        for n in (1, 3):
            assert ev("thm12", n=2 * n).value == 2 ** (2 * 2) * ev("thm12", n=n).value
            assert ev("thm11", n=2 * n, eps=1).value == 2**5 * ev("thm11", n=n, eps=1).value
            e = ceil_log2_int(3 ** (2 * 3))
            assert ev("thm41", n=2 * n).value == 2**e * ev("thm41", n=n).value

    @pytest.mark.parametrize("fid", [f for f in FORMULAS if f.endswith("threshold")])
    def test_thresholds_do_not_depend_on_n(self, fid):
        assert "n" not in FORMULAS[fid][0]

    @given(st.integers(1, 4), st.integers(1, 4), st.integers(1, 50))
    def test_explicit_bound_covers_partition(self, s, t, n):
        big = ev("thm13_internal", s=s, t=t, n=n).value
        assert big >= ev("lemma33_threshold", s=s, t=t).value * s * n

    def test_rational_and_integer_inputs_agree(self):
        for fid in FORMULAS:
            a = eval_bound(BoundFormula(fid, {k: BASE_PARAMS[k] for k in FORMULAS[fid][0]}))
            b = eval_bound(BoundFormula(fid, {k: Fraction(BASE_PARAMS[k]) for k in FORMULAS[fid][0]}))
            assert a == b and isinstance(a.value, int)


class TestKst:
    @pytest.mark.parametrize("t", [1, 2, 3, 4])
    @pytest.mark.parametrize("lam", [Fraction(1, 10), Fraction(1, 3), Fraction(1, 2), Fraction(9, 10)])
    def test_exact_matches_float(self, t, lam):
        for m in range(t, 300):
            lhs = float(lam) * m * m
            rhs = oracles.kst_bound_float(t, m)
            if abs(lhs - rhs) > 1e-6 * max(1, rhs):
                assert kst_exceeds(t, lam, m) == (lhs > rhs)

    def test_min_part_size(self):
        assert kst_min_part_size(2, Fraction(1, 2)) == 7
        assert oracles.kst_min_part_float(2, 0.5) == 7
        with pytest.raises(ValueError):
            kst_min_part_size(2, 1)

    @pytest.mark.parametrize("m", range(2, 7))
    def test_bound_forces_k22(self, m):
        z = oracles.zarankiewicz_22(m)
        assert z <= oracles.kst_bound_float(2, m)


class TestChainInequality:
    def test_sweep(self):
        for t in range(2, 7):
            for s in range(4, t * t + 1):
                for l in range(4, s + 1):
                    assert check_chain_inequality(s, t, l).holds

    def test_small_failure_is_real(self):
        r = check_chain_inequality(2, 2, 2)
        assert not r.holds
        assert r.lhs == Fraction(8, 64) * 6**50 and r.rhs == 6**50

    def test_domain(self):
        with pytest.raises(ValueError):
            check_chain_inequality(5, 2, 3)
        with pytest.raises(ValueError):
            check_chain_inequality(3, 2, 4)


class TestConstructions:
    @given(st.integers(1, 5), st.integers(1, 3), st.integers(0, 1), st.data())
    def test_blowup_is_total(self, m, b, intra, data):
        cols = data.draw(st.lists(st.integers(0, 1), min_size=m * (m - 1) // 2, max_size=m * (m - 1) // 2))
        base = EdgeColoring.from_pairs(m, 2, cols)
        c = blowup_construction(base, b, intra)
        assert c.n_vertices == m * b
        for u, v in combinations(range(m * b), 2):
            assert c.color(u, v) == (intra if u // b == v // b else base.color(u // b, v // b))

    @pytest.mark.parametrize("s, t, n", [(3, 1, 4), (4, 1, 3), (3, 2, 5), (3, 2, 3), (4, 2, 5), (3, 3, 7)])
    def test_lower_bound_colorings_certified(self, s, t, n):
        lb = lower_bound_coloring(s, t, n)
        c = lb.coloring
        assert c.n_vertices == (RAMSEY(s, t + 1).value - 1) * ((n - 1) // t)
        assert find_ordered_embedding(c, 0, PathPower(n, t)) is None
        assert find_ordered_embedding(c, 1, Clique(s)) is None

    def test_interval_blowup_fails_for_squares(self):
        # interval blocks with red inside let a red square run through neighbouring blocks
        lb = lower_bound_coloring(3, 2, 5)
        c = blowup_construction(lb.base, 2, 0)
        assert find_ordered_embedding(c, 0, PathPower(5, 2)) is not None

    def test_interleaved_is_total(self):
        base = EdgeColoring.from_pairs(3, 2, (1, 0, 1))
        c = interleaved_construction(base, 2)
        assert c.color(0, 3) == 0 and c.color(0, 4) == base.color(0, 1)

    def test_stated_quantity_exceeds_exact_value(self):
        # with t = 1 the stated expression overshoots the exact ordered Ramsey number
        stated, exact = lower_bound_path_vs_clique(3, 1, 4)
        assert exact and stated == 9
        assert ordered_ramsey_number(Clique(3), MonotonePath(4), 8).value == 7

    def test_needs_exact_base(self):
        with pytest.raises(ValueError):
            lower_bound_coloring(5, 4, 3)
