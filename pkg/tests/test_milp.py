"""MILP construction, the subset/binary bijection, and objective evaluation."""

from __future__ import annotations

import pytest

from rrobust.exhaustive import SubsetPair, determine_robustness, enumerate_unordered_pairs, pair_count
from rrobust.graph import NodeSet, complete_digraph
from rrobust.milp import (
    ROW_CARDINALITY,
    ROW_DISJOINT,
    ROW_EPIGRAPH,
    ROW_SYMMETRY,
    BinaryPair,
    block_objective,
    build_milp,
    check_feasible,
    decode_pair,
    dump_model,
    encode_pair,
    enumerate_binary_pairs,
    objective_value,
)

from helpers import d3, random_graph_sample

D3_DUMP = """milp n=3 vars=7 rows=14
minimize t
epigraph[1]: -1 t +2 b1[1] -1 b1[2] -1 b1[3] <= 0
epigraph[2]: -1 t -1 b1[1] +2 b1[2] -1 b1[3] <= 0
epigraph[3]: -1 t -1 b1[1] +1 b1[3] <= 0
epigraph[4]: -1 t +2 b2[1] -1 b2[2] -1 b2[3] <= 0
epigraph[5]: -1 t -1 b2[1] +2 b2[2] -1 b2[3] <= 0
epigraph[6]: -1 t -1 b2[1] +1 b2[3] <= 0
disjoint[1]: +1 b1[1] +1 b2[1] <= 1
disjoint[2]: +1 b1[2] +1 b2[2] <= 1
disjoint[3]: +1 b1[3] +1 b2[3] <= 1
cardinality[1]: -1 b1[1] -1 b1[2] -1 b1[3] <= -1
cardinality[2]: +1 b1[1] +1 b1[2] +1 b1[3] <= 2
cardinality[3]: -1 b2[1] -1 b2[2] -1 b2[3] <= -1
cardinality[4]: +1 b2[1] +1 b2[2] +1 b2[3] <= 2
symmetry[1]: +1 b2[1] <= 0
t >= 0
binary b1[1] b1[2] b1[3] b2[1] b2[2] b2[3]
"""


class TestBuild:
    def test_dimensions_n3(self):
        model = build_milp(d3().laplacian())
        assert model.num_vars == 7
        assert len(model.rows_of_kind(ROW_EPIGRAPH)) == 6
        assert len(model.rows_of_kind(ROW_DISJOINT)) == 3
        assert len(model.rows_of_kind(ROW_CARDINALITY)) == 4
        assert len(model.rows_of_kind(ROW_SYMMETRY)) == 1
        assert model.objective == (1, 0, 0, 0, 0, 0, 0)
        assert model.integrality == (False,) + (True,) * 6
        assert model.lower == (0,) * 7
        assert model.upper == (None,) + (1,) * 6

    def test_symmetry_flag(self):
        model = build_milp(d3().laplacian(), symmetry_break=False)
        assert len(model.rows) == 13
        assert not model.rows_of_kind(ROW_SYMMETRY)

    def test_all_coefficients_integral(self):
        model = build_milp(complete_digraph(5).laplacian())
        for row in model.rows:
            assert all(isinstance(c, int) for _, c in row.coeffs)
            assert isinstance(row.rhs, int)

    def test_rejects_tiny_graphs(self):
        from rrobust.graph import Digraph

        with pytest.raises(ValueError):
            build_milp(Digraph(1, []).laplacian())

    def test_var_names(self):
        model = build_milp(d3().laplacian())
        assert model.var_name(0) == "t"
        assert model.var_name(1) == "b1[1]"
        assert model.var_name(6) == "b2[3]"
        with pytest.raises(ValueError):
            model.var_name(7)


class TestFeasibility:
    def test_spec_examples(self):
        assert check_feasible(BinaryPair((1, 0, 0), (0, 1, 0)))
        assert not check_feasible(BinaryPair((1, 1, 1), (0, 0, 0)))
        assert not check_feasible(BinaryPair((1, 0, 0), (1, 0, 0)))

    def test_vector_validation(self):
        with pytest.raises(ValueError):
            BinaryPair((1, 0), (0, 1, 0))
        with pytest.raises(ValueError):
            BinaryPair((2, 0), (0, 1))

    @pytest.mark.parametrize("n", range(2, 7))
    def test_feasible_count_matches_pair_count(self, n):
        count = sum(1 for bp in enumerate_binary_pairs(n) if check_feasible(bp))
        assert count == pair_count(n)


class TestBijection:
    def test_encode_example(self):
        pair = SubsetPair(NodeSet.from_vertices(3, [1, 3]), NodeSet.from_vertices(3, [2]))
        assert encode_pair(pair) == BinaryPair((1, 0, 1), (0, 1, 0))

    def test_round_trip_all_pairs_n4(self):
        for pair in enumerate_unordered_pairs(4):
            for oriented in (pair, pair.swapped()):
                encoded = encode_pair(oriented)
                assert check_feasible(encoded)
                assert decode_pair(encoded) == oriented

    def test_decode_rejects_infeasible(self):
        with pytest.raises(ValueError):
            decode_pair(BinaryPair((1, 1), (0, 0)))


class TestObjective:
    def test_d3_examples(self):
        lap = d3().laplacian()
        assert objective_value(lap, BinaryPair((0, 0, 1), (1, 1, 0))) == 1
        assert objective_value(lap, BinaryPair((1, 0, 0), (0, 1, 0))) == 2

    def test_complete_pair(self):
        lap = complete_digraph(2).laplacian()
        assert objective_value(lap, BinaryPair((1, 0), (0, 1))) == 1

    def test_rejects_bad_input(self):
        lap = d3().laplacian()
        with pytest.raises(ValueError):
            objective_value(lap, BinaryPair((1, 1, 1), (0, 0, 0)))
        with pytest.raises(ValueError):
            objective_value(lap, BinaryPair((1, 0), (0, 1)))

    def test_swap_symmetry(self):
        for d in random_graph_sample(15, n_lo=2, n_hi=6, seed=3):
            lap = d.laplacian()
            for pair in enumerate_unordered_pairs(d.n):
                a = objective_value(lap, encode_pair(pair))
                b = objective_value(lap, encode_pair(pair.swapped()))
                assert a == b

    def test_equals_max_reachability(self):
        for d in random_graph_sample(15, n_lo=2, n_hi=6, seed=8):
            lap = d.laplacian()
            for pair in enumerate_unordered_pairs(d.n):
                expected = max(d.reachability(pair.s1), d.reachability(pair.s2))
                assert objective_value(lap, encode_pair(pair)) == expected


class TestModelFaithfulness:
    def test_minimum_over_feasible_set_is_rmax(self):
        for d in random_graph_sample(20, n_lo=2, n_hi=7, seed=17):
            lap = d.laplacian()
            best = min(
                objective_value(lap, encode_pair(pair))
                for pair in enumerate_unordered_pairs(d.n)
            )
            assert best == determine_robustness(d).r_max

    def test_minimal_feasible_t_is_objective(self):
        # epigraph rows force t >= every row product; the smallest feasible
        # t at an integer point is exactly the (nonnegative) objective
        for d in random_graph_sample(10, n_lo=2, n_hi=6, seed=23):
            lap = d.laplacian()
            for pair in enumerate_unordered_pairs(d.n):
                bp = encode_pair(pair)
                products = [
                    sum(c * e for c, e in zip(lap.row(j), vec))
                    for vec in (bp.b1, bp.b2)
                    for j in range(1, d.n + 1)
                ]
                assert max(0, max(products)) == objective_value(lap, bp)

    def test_k2_integer_points(self):
        feasible = [bp for bp in enumerate_binary_pairs(2) if check_feasible(bp)]
        assert sorted((bp.b1, bp.b2) for bp in feasible) == [
            ((0, 1), (1, 0)),
            ((1, 0), (0, 1)),
        ]
        lap = complete_digraph(2).laplacian()
        assert all(objective_value(lap, bp) == 1 for bp in feasible)


def test_dump_golden():
    assert dump_model(build_milp(d3().laplacian())) == D3_DUMP


def test_block_objective_matches_objective_value():
    lap = d3().laplacian()
    bp = BinaryPair((0, 0, 1), (1, 1, 0))
    assert block_objective(lap.rows, bp) == objective_value(lap, bp)
