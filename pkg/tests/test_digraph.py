"""
Tests for the reflexive digraph core
"""

import numpy as np
import pytest

from slupecki.digraph import (
    Digraph, decode_index, encode_tuple, find_embeddings, induced, is_induced_embedding,
    isomorphic, new_digraph, power, product, strong_components, symmetrization,
    weak_components,
)
from slupecki.errors import ArityError, DigraphError
from slupecki.families import (
    antichain, chain, complete_minus_matching, directed_cycle, lemma_example_digraph,
    path, suspension, symmetric_cycle,
)


class TestConstruction:
    def test_single_vertex_has_its_loop(self):
        g = new_digraph(1, [])
        assert g.n == 1
        assert g.arc_count == 1
        assert g.has_arc(0, 0)

    def test_lemma_example_arc_count(self):
        g = new_digraph(4, [(0, 1), (1, 2), (2, 3), (3, 0), (3, 1)])
        assert g.arc_count == 9
        assert g == lemma_example_digraph()

    def test_out_of_range_arc_is_named(self):
        with pytest.raises(DigraphError, match=r"\(0, 5\)"):
            new_digraph(3, [(0, 5)])

    @pytest.mark.parametrize("arc", [(0, 1, 2), (0,), 7])
    def test_malformed_arc_rejected(self, arc):
        with pytest.raises(DigraphError, match="malformed arc"):
            new_digraph(3, [arc])

    def test_empty_vertex_set_rejected(self):
        with pytest.raises(DigraphError):
            new_digraph(0, [])

    def test_duplicate_arcs_collapse(self):
        assert new_digraph(2, [(0, 1), (0, 1)]).arc_count == 3

    def test_matrix_is_read_only(self):
        g = directed_cycle(3)
        with pytest.raises(ValueError):
            g.matrix[0, 1] = False

    def test_neighbours(self):
        g = lemma_example_digraph()
        assert g.out_neighbors(3) == [0, 1, 3]
        assert g.in_neighbors(1) == [0, 1, 3]
        assert not g.is_symmetric()
        assert g.is_strongly_connected()


class TestProducts:
    def test_loop_times_loop(self):
        loop = new_digraph(1, [])
        assert product(loop, loop) == loop

    def test_c4_squared(self):
        c4 = symmetric_cycle(4)
        sq = product(c4, c4)
        assert sq.n == 16
        assert sq.arc_count == 144

    def test_power_matches_product(self):
        c4 = symmetric_cycle(4)
        assert power(c4, 2) == product(c4, c4)
        assert power(directed_cycle(3), 3).n == 27

    def test_power_one_is_identity(self):
        g = lemma_example_digraph()
        assert power(g, 1) == g

    def test_power_zero_rejected(self):
        with pytest.raises(ArityError):
            power(directed_cycle(3), 0)

    def test_product_arc_count_identity(self, random_digraph, rng):
        for _ in range(200):
            g = random_digraph(rng.randint(1, 5))
            h = random_digraph(rng.randint(1, 5))
            p = product(g, h)
            assert p.arc_count == g.arc_count * h.arc_count
            assert all(p.has_arc(v, v) for v in range(p.n))

    def test_product_vertex_order_is_row_major(self):
        g, h = path("+"), directed_cycle(3)
        p = product(g, h)
        # (0, 2) -> (1, 0)
        assert p.has_arc(encode_tuple((0, 2), 3), encode_tuple((1, 0), 3))


class TestSymmetrization:
    def test_directed_cycle_becomes_symmetric(self):
        assert symmetrization(directed_cycle(3)) == symmetric_cycle(3)

    def test_fixed_point(self):
        c = symmetric_cycle(5)
        assert symmetrization(c) == c

    def test_lemma_example(self):
        expected = new_digraph(4, [(0, 1), (1, 0), (1, 2), (2, 1), (2, 3), (3, 2),
                                   (3, 0), (0, 3), (1, 3), (3, 1)])
        assert symmetrization(lemma_example_digraph()) == expected


class TestVertexTuples:
    def test_first_coordinate_most_significant(self):
        assert encode_tuple((1, 2), 3) == 5
        assert decode_index(5, 3, 2) == (1, 2)
        assert encode_tuple((2, 0, 1), 3) == 19

    def test_inverse_on_a_cube(self):
        for idx in range(27):
            assert encode_tuple(decode_index(idx, 3, 3), 3) == idx

    def test_range_errors(self):
        with pytest.raises(ArityError):
            encode_tuple((0, 3), 3)
        with pytest.raises(ArityError):
            decode_index(9, 3, 2)


class TestComponents:
    def test_lemma_example_is_strongly_connected(self):
        assert strong_components(lemma_example_digraph()).count == 1

    def test_chain_order(self):
        parts = strong_components(chain(2))
        assert parts.blocks == ((0,), (1,))
        assert parts.precedes(0, 1)
        assert not parts.precedes(1, 0)
        assert parts.minimal_blocks() == [0]
        assert parts.maximal_blocks() == [1]

    def test_two_loops(self):
        assert weak_components(antichain(2)).count == 2

    def test_block_order_is_acyclic_and_transitive(self, random_digraph):
        for _ in range(50):
            parts = strong_components(random_digraph(7, 0.25))
            r = range(parts.count)
            for i in r:
                assert parts.precedes(i, i)
                for j in r:
                    if i != j:
                        assert not (parts.precedes(i, j) and parts.precedes(j, i))
                    for k in r:
                        if parts.precedes(i, j) and parts.precedes(j, k):
                            assert parts.precedes(i, k)

    def test_block_partition(self, random_digraph):
        g = random_digraph(8, 0.2)
        parts = strong_components(g)
        assert sorted(v for b in parts.blocks for v in b) == list(range(8))
        for i, block in enumerate(parts.blocks):
            assert all(parts.block_of[v] == i for v in block)


class TestInduced:
    def test_lemma_example_contains_directed_triangle(self):
        assert induced(lemma_example_digraph(), [1, 2, 3]) == directed_cycle(3)

    def test_all_vertices(self):
        g = lemma_example_digraph()
        assert induced(g, range(4)) == g

    def test_edge_of_hexagon(self):
        assert induced(symmetric_cycle(6), {0, 1}) == path("s")

    def test_empty_rejected(self):
        with pytest.raises(DigraphError):
            induced(directed_cycle(3), [])


class TestEmbeddings:
    def test_single_vertex_embeds_everywhere(self):
        g = lemma_example_digraph()
        result = find_embeddings(new_digraph(1, []), g)
        assert result.maps == [(0,), (1,), (2,), (3,)]
        assert result.complete

    def test_cycle_into_its_square(self):
        c4 = symmetric_cycle(4)
        sq = power(c4, 2)
        result = find_embeddings(c4, sq)
        assert (0, 4, 8, 12) in result.maps
        assert all(is_induced_embedding(c4, sq, e) for e in result.maps)
        assert result.maps == sorted(result.maps)

    def test_symmetric_edge_into_directed_triangle(self):
        result = find_embeddings(path("s"), directed_cycle(3))
        assert result.maps == []
        assert result.complete

    def test_limit_stops_early(self):
        result = find_embeddings(new_digraph(1, []), directed_cycle(5), limit=2)
        assert result.maps == [(0,), (1,)]
        assert result.stats.stopped_early

    def test_zero_limit_returns_nothing(self):
        result = find_embeddings(new_digraph(1, []), directed_cycle(5), limit=0)
        assert result.maps == []

    def test_embeddings_recheck(self, random_digraph):
        for _ in range(20):
            g = random_digraph(6)
            h = induced(g, [0, 2, 3])
            result = find_embeddings(h, g)
            assert (0, 2, 3) in result.maps
            for e in result.maps:
                assert is_induced_embedding(h, g, e)

    def test_double_suspension_is_g3(self):
        g3 = complete_minus_matching(6)
        assert isomorphic(suspension(suspension(antichain(2))), g3)
        assert not isomorphic(g3, complete_minus_matching(8))
