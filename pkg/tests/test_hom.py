"""
Tests for homomorphism search and the Hom-digraph
"""

import pytest

from slupecki.budget import Budget, BudgetStatus
from slupecki.digraph import new_digraph
from slupecki.errors import BudgetExhausted, DigraphError
from slupecki.families import (
    antichain, chain, complete_minus_hamiltonian, directed_cycle, lemma_example_digraph,
    ordinal_sum, path, symmetric_cycle,
)
from slupecki.hom import (
    HomSearch, automorphisms, collect_homs, compose, endomorphisms, enumerate_homs,
    exists_hom, hom_arc, hom_digraph, identity_status, is_retraction,
)
from slupecki.operations import OperationTable, is_homomorphism

ID = (0, 1, 2, 3)
R = (1, 1, 2, 3)
S = (3, 1, 2, 3)


class TestEnumeration:
    def test_single_vertex_source(self):
        g = lemma_example_digraph()
        assert collect_homs(new_digraph(1, []), g) == [(0,), (1,), (2,), (3,)]

    def test_directed_triangle_endomorphisms(self):
        assert len(endomorphisms(directed_cycle(3))) == 6

    def test_two_chain_endomorphisms(self):
        assert [f.as_tuple() for f in endomorphisms(chain(2))] == [(0, 0), (0, 1), (1, 1)]

    def test_pinned_arc_into_hn(self):
        homs = collect_homs(path("+"), complete_minus_hamiltonian(4), pins={0: 0})
        assert {t[1] for t in homs} == {0, 2, 3}

    def test_bad_pin(self):
        with pytest.raises(DigraphError):
            collect_homs(path("+"), directed_cycle(3), pins={0: 7})

    def test_lemma_example_endomorphisms(self):
        tables = {f.as_tuple() for f in endomorphisms(lemma_example_digraph())}
        assert {ID, R, S} <= tables
        assert {(v,) * 4 for v in range(4)} <= tables

    def test_lexicographic_and_repeatable(self):
        g = ordinal_sum([2, 2])
        first = collect_homs(g, g)
        assert first == sorted(first)
        assert collect_homs(g, g) == first

    def test_fail_first_finds_the_same_set(self):
        g = lemma_example_digraph()
        found = []
        enumerate_homs(g, g, visitor=found.append, deterministic=False)
        assert sorted(found) == collect_homs(g, g)

    def test_every_solution_is_a_homomorphism(self, random_digraph):
        for _ in range(20):
            h = random_digraph(4)
            g = random_digraph(4)
            for table in collect_homs(h, g):
                assert is_homomorphism(h, g, table)

    def test_visitor_can_stop(self):
        g = directed_cycle(3)
        found = []
        stats = enumerate_homs(g, g, visitor=lambda t: found.append(t) or False)
        assert len(found) == 1
        assert stats.stopped_early
        assert stats.complete

    def test_exists(self):
        assert exists_hom(directed_cycle(3), directed_cycle(3), pins={0: 1})
        assert not exists_hom(path("s"), directed_cycle(4), pins={0: 0, 1: 2})

    def test_node_budget(self):
        g = ordinal_sum([2, 2, 2])
        stats = enumerate_homs(g, g, budget=Budget(max_nodes=5))
        assert stats.status == BudgetStatus.NODE_BUDGET
        with pytest.raises(BudgetExhausted):
            collect_homs(g, g, budget=Budget(max_nodes=5))

    def test_automorphisms(self):
        assert len(automorphisms(symmetric_cycle(4))) == 8
        assert len(automorphisms(lemma_example_digraph())) == 1

    def test_search_root_inconsistent(self):
        assert HomSearch(path("s"), chain(2), pins={0: 0, 1: 1}).root() is None


class TestHomDigraph:
    def test_vertex_source_reproduces_target(self):
        g = lemma_example_digraph()
        assert hom_digraph(new_digraph(1, []), g).digraph == g

    def test_lemma_example_arcs(self):
        g = lemma_example_digraph()
        hd = hom_digraph(g, g)
        ident, r, s = hd.index_of(ID), hd.index_of(R), hd.index_of(S)
        assert hd.digraph.has_arc(s, ident)
        assert hd.digraph.has_arc(ident, r)
        assert not hd.digraph.has_arc(ident, s)
        assert not hd.digraph.has_arc(r, ident)

    def test_composition_is_monotone(self):
        g = ordinal_sum([1, 2])
        ends = endomorphisms(g)
        for f in ends:
            for f2 in ends:
                if hom_arc(g, g, f, f2):
                    for h in ends:
                        assert hom_arc(g, g, compose(h, f), compose(h, f2))

    def test_tables_json(self):
        hd = hom_digraph(chain(2), chain(2))
        assert hd.tables_json() == [{"index": 0, "table": [0, 0]},
                                    {"index": 1, "table": [0, 1]},
                                    {"index": 2, "table": [1, 1]}]

    def test_retractions(self):
        g = chain(3)
        assert is_retraction(g, OperationTable.constant(3, 1, 1))
        assert is_retraction(g, OperationTable(3, 1, [0, 2, 2]))
        assert not is_retraction(directed_cycle(3), OperationTable(3, 1, [1, 2, 0]))


class TestIdentityStatus:
    def test_lemma_example(self):
        status = identity_status(lemma_example_digraph())
        assert not status.isolated_loop
        assert not status.alone_weak
        assert status.alone_strong
        assert set(status.weak_component) == {ID, R, S}
        assert set(status.arcs) == {(S, ID), (ID, R)}

    def test_ordinal_sum_identity_is_isolated(self):
        status = identity_status(ordinal_sum([2, 2, 2]))
        assert status.isolated_loop
        assert status.alone_weak and status.alone_strong

    def test_chain_identity_has_neighbours(self):
        status = identity_status(chain(2))
        assert not status.isolated_loop
        assert (0, 0) in status.neighbors

    @pytest.mark.parametrize("g", [directed_cycle(3), symmetric_cycle(4), antichain(2),
                                   chain(3), ordinal_sum([2, 2])])
    def test_implications(self, g):
        status = identity_status(g)
        if status.isolated_loop:
            assert status.alone_weak
        if status.alone_weak:
            assert status.alone_strong
        assert status.to_dict()["alone_strong"] == status.alone_strong
