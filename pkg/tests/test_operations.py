"""
Tests for operation tables, classification and relation preservation
"""

import itertools

import numpy as np
import pytest

from slupecki.errors import ArityError
from slupecki.families import chain, directed_cycle, ordinal_sum, symmetric_cycle
from slupecki.operations import (
    Kind, OperationTable, Relation, classify, is_polymorphism, preserves_relation,
    slupecki_relation, theta_violation,
)
from slupecki.ordinal import ternary_witness


def random_table(np_rng, n, k):
    return OperationTable(n, k, np_rng.integers(0, n, size=n ** k))


class TestTables:
    def test_projection_values(self):
        p2 = OperationTable.projection(3, 2, 2)
        assert p2(1, 2) == 2
        assert p2.as_tuple() == (0, 1, 2) * 3

    def test_projection_index_is_one_based(self):
        with pytest.raises(ArityError):
            OperationTable.projection(3, 2, 0)

    def test_size_checked(self):
        with pytest.raises(ArityError):
            OperationTable(3, 2, range(8))
        with pytest.raises(ArityError):
            OperationTable(2, 1, [0, 2])

    def test_values_are_read_only(self):
        f = OperationTable.identity(3)
        with pytest.raises(ValueError):
            f.values[0] = 1

    def test_image_and_idempotence(self):
        f = OperationTable.from_function(3, 2, min)
        assert f.image() == {0, 1, 2}
        assert f.is_idempotent()
        assert not OperationTable.constant(3, 2, 0).is_surjective()


class TestClassification:
    def test_projection(self):
        cls = classify(OperationTable.projection(4, 3, 2))
        assert cls.kind == Kind.PROJECTION
        assert cls.coordinate == 2
        assert cls.essential == {2}

    def test_essentially_unary(self):
        rotate = OperationTable(3, 1, [1, 2, 0])
        f = OperationTable.projection(3, 2, 1).compose_unary(rotate)
        cls = classify(f)
        assert cls.kind == Kind.ESSENTIALLY_UNARY
        assert cls.unary == rotate
        assert cls.surjective and not cls.idempotent

    def test_constant_reports_first_coordinate(self):
        cls = classify(OperationTable.constant(3, 2, 1))
        assert cls.kind == Kind.ESSENTIALLY_UNARY
        assert cls.coordinate == 1
        assert cls.essential == frozenset()

    def test_essential(self):
        cls = classify(OperationTable.from_function(3, 2, max))
        assert cls.kind == Kind.ESSENTIAL
        assert cls.to_dict()["essential_coordinates"] == [1, 2]


class TestPolymorphisms:
    def test_projections_everywhere(self, random_digraph):
        for _ in range(10):
            g = random_digraph(4)
            for i in (1, 2, 3):
                assert is_polymorphism(g, OperationTable.projection(4, 3, i))

    def test_lattice_operations_on_chain(self):
        g = chain(3)
        assert is_polymorphism(g, OperationTable.from_function(3, 2, min))
        assert is_polymorphism(g, OperationTable.from_function(3, 2, max))
        assert not is_polymorphism(g, OperationTable.from_function(3, 2, lambda x, y: 2 - x))

    def test_rotation_of_cycle(self):
        f = OperationTable.projection(3, 2, 2).compose_unary(OperationTable(3, 1, [1, 2, 0]))
        assert is_polymorphism(directed_cycle(3), f)

    def test_size_mismatch(self):
        with pytest.raises(ArityError):
            is_polymorphism(symmetric_cycle(4), OperationTable.identity(3))


class TestSlupeckiRelation:
    def test_sizes(self):
        assert len(slupecki_relation(2)) == 2
        assert len(slupecki_relation(3)) == 21
        assert len(slupecki_relation(4)) == 232
        assert slupecki_relation(3).is_theta

    def test_needs_two_elements(self):
        with pytest.raises(ArityError):
            slupecki_relation(1)

    def test_arc_relation_is_not_theta(self):
        g = chain(2)
        assert not Relation(2, 2, frozenset(g.arcs())).is_theta


def theta_oracle(f):
    cls = classify(f)
    return not cls.surjective or cls.is_essentially_unary


class TestPreservation:
    def test_two_elements_is_equality(self):
        # theta_2 is the equality relation, which every operation preserves
        theta = slupecki_relation(2)
        assert theta.tuples == {(0, 0), (1, 1)}
        for values in itertools.product(range(2), repeat=4):
            assert preserves_relation(OperationTable(2, 2, values), theta).holds is True

    @pytest.mark.parametrize("n", [3, pytest.param(4, marks=pytest.mark.slow)])
    def test_random_binary_tables(self, np_rng, n):
        theta = slupecki_relation(n)
        for _ in range(1000):
            f = random_table(np_rng, n, 2)
            result = preserves_relation(f, theta)
            assert result.mode == "exhaustive"
            assert result.holds == theta_oracle(f)

    def test_random_ternary_tables_use_violation_search(self, np_rng):
        theta = slupecki_relation(4)
        for _ in range(50):
            f = random_table(np_rng, 4, 3)
            result = preserves_relation(f, theta)
            assert result.mode == "violation-search"
            assert result.holds == theta_oracle(f)

    def test_counterexample_columns_lie_in_theta(self):
        theta = slupecki_relation(3)
        f = OperationTable.from_function(3, 2, lambda x, y: (x + y) % 3)
        result = theta_violation(f)
        assert result.holds is False
        columns = result.counterexample
        assert all(c in theta for c in columns)
        image = [f(*row) for row in zip(*columns)]
        assert sorted(image) == [0, 1, 2]

    def test_ternary_witness_on_six_elements(self):
        f = ternary_witness(2, 2, 2)
        result = preserves_relation(f, slupecki_relation(6))
        assert result.holds is False

    def test_essentially_unary_on_six_elements(self):
        f = OperationTable.projection(6, 3, 3)
        assert preserves_relation(f, slupecki_relation(6)).holds is True

    def test_non_surjective_preserves(self):
        f = OperationTable.constant(5, 3, 0)
        assert preserves_relation(f, slupecki_relation(5)).holds is True

    def test_arc_relation_matches_polymorphism_check(self, random_digraph, np_rng):
        for _ in range(30):
            g = random_digraph(3, 0.5)
            f = random_table(np_rng, 3, 2)
            arcs = Relation(3, 2, frozenset(g.arcs()))
            assert preserves_relation(f, arcs).holds == is_polymorphism(g, f)

    def test_sampling_on_large_non_theta_relation(self):
        g = ordinal_sum([2, 2, 2])
        arcs = Relation(6, 2, frozenset(g.arcs()))
        f = OperationTable.projection(6, 5, 1)
        result = preserves_relation(f, arcs, exhaustive_limit=10, samples=100,
                                    rng=np.random.default_rng(0))
        assert result.mode == "sampled"
        assert result.holds is None
