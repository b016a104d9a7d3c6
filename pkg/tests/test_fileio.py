"""
Tests for the .dg and .op text formats
"""

import json

import pytest

from slupecki.errors import FormatError
from slupecki.families import chain, lemma_example_digraph, ordinal_sum
from slupecki.fileio import (
    file_digest, format_digraph, format_op, parse_digraph, parse_op, read_digraph, read_op,
    write_digraph, write_hom_sidecar, write_op,
)
from slupecki.hom import hom_digraph
from slupecki.operations import OperationTable
from slupecki.ordinal import ternary_witness


class TestDigraphFormat:
    def test_parse_with_comments(self):
        text = "# lemma example\nn 4\n0 1\n1 2  # forward\n2 3\n\n3 0\n3 1\n"
        assert parse_digraph(text) == lemma_example_digraph()

    def test_loops_are_implicit(self):
        assert format_digraph(ordinal_sum([1, 1])) == "n 2\n0 1\n"

    def test_file_round_trip(self, tmp_path):
        path = tmp_path / "lemma.dg"
        write_digraph(lemma_example_digraph(), path)
        assert read_digraph(path) == lemma_example_digraph()

    def test_random_round_trips(self, random_digraph):
        for _ in range(20):
            g = random_digraph(6)
            assert parse_digraph(format_digraph(g)) == g

    def test_empty_vertex_set(self):
        with pytest.raises(FormatError, match="positive"):
            parse_digraph("n 0\n")

    def test_out_of_range_arc_has_line(self):
        with pytest.raises(FormatError) as info:
            parse_digraph("n 3\n0 1\n0 5\n")
        assert info.value.line == 3

    def test_bad_token(self):
        with pytest.raises(FormatError) as info:
            parse_digraph("n 3\n0 x\n")
        assert info.value.line == 2

    def test_missing_header(self):
        with pytest.raises(FormatError):
            parse_digraph("# nothing here\n")


class TestOperationFormat:
    def test_ternary_witness_round_trip(self, tmp_path):
        f = ternary_witness(2, 2, 2)
        path = tmp_path / "witness.op"
        write_op(f, path)
        assert read_op(path) == f

    def test_rows_of_n_values(self):
        text = format_op(OperationTable.projection(2, 2, 1))
        assert text == "n 2\nk 2\n0 0\n1 1\n"

    def test_value_count(self):
        with pytest.raises(FormatError, match="expected 4 values"):
            parse_op("n 2\nk 2\n0 1 1\n")

    def test_value_range(self):
        with pytest.raises(FormatError) as info:
            parse_op("n 2\nk 1\n0\n2\n")
        assert info.value.line == 4

    def test_header_order(self):
        with pytest.raises(FormatError):
            parse_op("k 2\nn 2\n0 0 0 0\n")


class TestSidecar:
    def test_tables_json(self, tmp_path):
        hd = hom_digraph(chain(2), chain(2))
        path = tmp_path / "hom.dg"
        write_digraph(hd.digraph, path)
        sidecar = write_hom_sidecar(hd, str(path))
        assert sidecar.endswith("hom.tables.json")
        with open(sidecar, encoding="utf-8") as f:
            assert json.load(f)[1] == {"index": 1, "table": [0, 1]}

    def test_digest_changes_with_content(self, tmp_path):
        a, b = tmp_path / "a.dg", tmp_path / "b.dg"
        write_digraph(chain(2), a)
        write_digraph(chain(3), b)
        assert file_digest(a) != file_digest(b)
        assert len(file_digest(a)) == 64
