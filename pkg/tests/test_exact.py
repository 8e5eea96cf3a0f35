import random
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ordramsey.bounds import RAMSEY
from ordramsey.core import Clique, EdgeColoring, MonotonePath, PathPower, QGraph
from ordramsey.exact import (
    AvoidanceInstance,
    CnfOverflow,
    build_cnf,
    export_cnf,
    find_avoiding_coloring,
    ordered_ramsey_number,
    pair_order,
)
from ordramsey.finders import BudgetExhausted, SearchBudget, find_ordered_embedding

from . import oracles

small_patterns = st.sampled_from([Clique(2), Clique(3), MonotonePath(3), MonotonePath(4), PathPower(4, 2), QGraph(2, 1, 1)])


def as_oracle(p):
    return p.kind, tuple(p.to_dict()[f] for f in p._fields)


def avoids(c, red, blue):
    return find_ordered_embedding(c, 0, red) is None and find_ordered_embedding(c, 1, blue) is None


class TestAvoidance:
    def test_k3_vs_p3(self):
        c = find_avoiding_coloring(AvoidanceInstance(4, Clique(3), MonotonePath(3)))
        assert c is not None and avoids(c, Clique(3), MonotonePath(3))
        assert find_avoiding_coloring(AvoidanceInstance(5, Clique(3), MonotonePath(3))) is None

    def test_single_vertex(self):
        c = find_avoiding_coloring(AvoidanceInstance(1, Clique(3), Clique(3)))
        assert c is not None and c.n_vertices == 1

    def test_patterns_need_two_vertices(self):
        with pytest.raises(ValueError):
            AvoidanceInstance(3, Clique(1), Clique(2))

    @settings(max_examples=40)
    @given(st.integers(2, 5), small_patterns, small_patterns)
    def test_matches_full_enumeration(self, n, red, blue):
        c = find_avoiding_coloring(AvoidanceInstance(n, red, blue))
        assert (c is not None) == oracles.avoiding_exists(n, as_oracle(red), as_oracle(blue))
        if c is not None:
            assert avoids(c, red, blue)

    def test_budget_exhaustion_is_indeterminate(self):
        with pytest.raises(BudgetExhausted):
            find_avoiding_coloring(AvoidanceInstance(8, Clique(3), Clique(4)), SearchBudget(max_nodes=50))

    def test_parallel_split_agrees(self):
        inst = AvoidanceInstance(6, Clique(3), MonotonePath(4))
        assert find_avoiding_coloring(inst, jobs=2) == find_avoiding_coloring(inst)
        inst = AvoidanceInstance(7, Clique(3), MonotonePath(4))
        assert find_avoiding_coloring(inst, jobs=2) is None

    def test_pair_order_prefix_closed(self):
        order = pair_order(6)
        assert sorted(order) == list(combinations(range(6), 2))
        assert order[: 10] == pair_order(5)


class TestRamseyNumbers:
    @pytest.mark.parametrize(
        "red, blue, value",
        [
            (Clique(2), Clique(2), 2),
            (MonotonePath(3), MonotonePath(3), 5),
            (Clique(3), MonotonePath(4), 7),
            (Clique(3), MonotonePath(3), 5),
        ],
    )
    def test_known_values(self, red, blue, value):
        res = ordered_ramsey_number(red, blue, 10)
        assert res.value == value and res.lower_bound == value
        assert res.certificate.n_vertices == value - 1 and avoids(res.certificate, red, blue)

    @pytest.mark.parametrize("s, n", [(s, n) for s in (2, 3) for n in (2, 3, 4, 5)])
    def test_monotone_path_formula(self, s, n):
        assert ordered_ramsey_number(Clique(s), MonotonePath(n), 12).value == (s - 1) * (n - 1) + 1

    @pytest.mark.parametrize("a, b", [(3, 3), (3, 4)])
    def test_recertifies_classical_table(self, a, b):
        # ordered and unordered Ramsey numbers of cliques coincide
        assert ordered_ramsey_number(Clique(a), Clique(b), 10).value == RAMSEY(a, b).value

    def test_lower_bound_only(self):
        res = ordered_ramsey_number(Clique(3), MonotonePath(5), 4)
        assert res.value is None and res.lower_bound == 5 and res.certificate.n_vertices == 4

    @pytest.mark.parametrize("red, blue", [(Clique(3), MonotonePath(3)), (MonotonePath(4), Clique(2)), (PathPower(4, 2), Clique(3))])
    def test_symmetry(self, red, blue):
        a = ordered_ramsey_number(red, blue, 10)
        b = ordered_ramsey_number(blue, red, 10)
        assert a.value == b.value
        swapped = EdgeColoring.from_function(a.certificate.n_vertices, 2, lambda u, v: 1 - a.certificate.color(u, v))
        assert avoids(swapped, blue, red)

    def test_monotone_in_patterns(self):
        table = {n: ordered_ramsey_number(Clique(3), MonotonePath(n), 10).value for n in range(2, 5)}
        assert table[2] <= table[3] <= table[4]
        assert ordered_ramsey_number(Clique(2), MonotonePath(4)).value <= table[4]


class TestCnf:
    def test_triangle_example(self):
        cnf = build_cnf(AvoidanceInstance(3, Clique(3), Clique(3)))
        assert cnf.n_vars == 3
        assert cnf.clauses == ((-1, -2, -3), (1, 2, 3))

    def test_single_edge_unsat(self):
        cnf = build_cnf(AvoidanceInstance(2, Clique(2), Clique(2)))
        assert cnf.n_vars == 1 and cnf.clauses == ((-1,), (1,))
        assert not oracles.cnf_satisfiable(1, cnf.clauses)

    def test_dimacs_text(self):
        text = export_cnf(AvoidanceInstance(3, Clique(3), Clique(3)))
        lines = text.splitlines()
        assert lines[:3] == ["c edge 0 1 var 1", "c edge 0 2 var 2", "c edge 1 2 var 3"]
        assert "p cnf 3 2" in lines
        assert oracles.parse_dimacs(text) == (3, [[-1, -2, -3], [1, 2, 3]])

    def test_comment_map_matches_variables(self):
        text = export_cnf(AvoidanceInstance(5, MonotonePath(3), Clique(3)))
        pairs = [tuple(map(int, ln.split()[2:4])) for ln in text.splitlines() if ln.startswith("c edge")]
        assert sorted(pairs) == list(combinations(range(5), 2))

    def test_overflow_guard(self):
        with pytest.raises(CnfOverflow):
            build_cnf(AvoidanceInstance(10, Clique(3), Clique(3)), cap=5)

    @settings(max_examples=30)
    @given(st.integers(2, 5), small_patterns, small_patterns)
    def test_satisfiable_iff_avoiding(self, n, red, blue):
        cnf = build_cnf(AvoidanceInstance(n, red, blue))
        sat = oracles.cnf_satisfiable(cnf.n_vars, cnf.clauses)
        assert sat == (find_avoiding_coloring(AvoidanceInstance(n, red, blue)) is not None)

    def test_clause_semantics(self):
        # each red clause is violated exactly when its copy is all red
        rng = random.Random(0)
        inst = AvoidanceInstance(5, MonotonePath(3), Clique(3))
        cnf = build_cnf(inst)
        for _ in range(50):
            c = EdgeColoring.random(5, rng)
            assign = {k + 1: c.color(u, v) == 0 for k, (u, v) in enumerate(cnf.pairs)}
            ok = all(any(assign[abs(l)] == (l > 0) for l in cl) for cl in cnf.clauses)
            assert ok == avoids(c, inst.red_pattern, inst.blue_pattern)
