import os
import sys
import tempfile
import unittest

# Ensure project root is on sys.path for imports
sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from relgraph.errors import FormatError
from relgraph.families import generate, sunlet
from relgraph.formats import (
    dump_graph,
    dump_poset,
    dump_relation,
    parse_graph,
    parse_poset,
    parse_relation,
    read_graph,
)
from relgraph.graph import Graph
from relgraph.posets import Poset
from relgraph.relations import Relation


class TestGraphFormat(unittest.TestCase):
    def test_comments_and_loops(self):
        g = parse_graph("# triangle with a loop\ngraph 3\n0 1\n1 2  # middle\n\n2 0\n1 1\n")
        self.assertEqual(g, Graph.from_edges(3, [(0, 1), (1, 2), (2, 0), (1, 1)]))

    def test_dump_lists_each_edge_once(self):
        self.assertEqual(dump_graph(generate("cycle", 3)), "graph 3\n0 1\n0 2\n1 2\n")
        self.assertEqual(dump_graph(generate("dicycle", 3)), "digraph 3\n0 1\n1 2\n2 0\n")

    def test_reparse_is_identical(self):
        for g in (sunlet(5), generate("dragon", 3), generate("dicycle", 4), generate("single_loop", 1)):
            self.assertEqual(parse_graph(dump_graph(g)), g)

    def test_errors_carry_line_numbers(self):
        cases = [
            ("", 1),
            ("grph 2\n", 1),
            ("graph 2\n0 1 2\n", 2),
            ("graph 2\n\n0 5\n", 3),
            ("graph -1\n", 1),
        ]
        for text, line in cases:
            with self.assertRaises(FormatError) as ctx:
                parse_graph(text, "g.txt")
            self.assertEqual(ctx.exception.line, line, text)
            self.assertTrue(str(ctx.exception).startswith(f"g.txt:{line}:"))

    def test_missing_file(self):
        with self.assertRaises(FormatError):
            read_graph("/nonexistent/graph.txt")

    def test_undecodable_bytes(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "g.txt")
            with open(path, "wb") as fh:
                fh.write(b"graph 2\n# caf\xe9\n0 1\n")
            with self.assertRaises(FormatError) as ctx:
                read_graph(path)
        self.assertEqual(ctx.exception.line, 2)


class TestRelationFormat(unittest.TestCase):
    def test_round_trip(self):
        r = Relation.of(3, 2, [(0, 1), (2, 0), (2, 1)])
        self.assertEqual(dump_relation(r), "relation 3 2\n0 1\n2 0\n2 1\n")
        self.assertEqual(parse_relation(dump_relation(r)), r)

    def test_out_of_range(self):
        with self.assertRaises(FormatError):
            parse_relation("relation 2 2\n0 2\n")


class TestPosetFormat(unittest.TestCase):
    def test_parse(self):
        p = parse_poset("poset 3\n3 5 7\n7 3\n3 5\n")
        self.assertTrue(p.le(7, 5))
        self.assertEqual(parse_poset(dump_poset(p)).cover_pairs(), p.cover_pairs())

    def test_empty_poset(self):
        self.assertEqual(parse_poset("poset 0\n").labels, ())

    def test_cycle_in_covers(self):
        with self.assertRaises(FormatError):
            parse_poset("poset 2\n3 5\n3 5\n5 3\n")

    def test_unknown_label(self):
        with self.assertRaises(FormatError):
            parse_poset("poset 2\n3 5\n3 11\n")

    def test_round_trip_of_a_chain(self):
        p = Poset.chain([13, 3, 7])
        self.assertEqual(dump_poset(p), "poset 3\n13 3 7\n3 7\n13 3\n")


if __name__ == "__main__":
    unittest.main()
