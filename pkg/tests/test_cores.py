import os
import random
import sys
import unittest

import pytest

# Ensure project root is on sys.path for imports
sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from relgraph.cores import (
    all_self_relations_automorphic,
    cocore,
    cocore_vertices,
    cocore_witness,
    find_coretraction,
    find_retraction,
    full_domain_equivalent,
    graph_core,
    graph_core_vertices,
    has_property_N,
    has_property_Nstar,
    is_cocore,
    is_point_determining,
    is_r_core,
    minimal_basis,
    nucleus_vertex,
    partial_domain_equivalent,
    pd_quotient,
    r_core,
    r_core_vertices,
    rel_extremes,
    retraction_to_core,
    self_relations_automorphic_oracle,
    strongly_equivalent,
    weakly_equivalent,
)
from relgraph.enumeration import UniverseSpec, enumerate_universe
from relgraph.errors import PreconditionError, UnsupportedInput
from relgraph.families import generate
from relgraph.graph import Graph, complement, disjoint_union, induced_subgraph
from relgraph.homomorphisms import check_hom, is_core
from relgraph.isomorphism import is_isomorphic
from relgraph.oracles import cocore_oracle, graph_core_oracle, r_core_oracle
from relgraph.relations import Relation, apply_strong, extract_monomorphism, hall_check, predicates
from relgraph.search import iter_relations

K2 = generate("complete", 2)
P3 = generate("path", 3)
P4 = generate("path", 4)
P5 = generate("path", 5)
C4 = generate("cycle", 4)
C6 = generate("cycle", 6)
TWO_K2 = disjoint_union(K2, K2)


def looped_complete(n):
    return complement(Graph.empty(n))


class TestPointDetermining(unittest.TestCase):
    def test_quotients(self):
        self.assertEqual(pd_quotient(C4).quotient, K2)
        self.assertEqual(pd_quotient(P3).quotient, K2)
        self.assertEqual(pd_quotient(P4).quotient, P4)
        self.assertEqual(len(pd_quotient(Graph.empty(3)).classes), 1)

    def test_classes_numbered_by_least_vertex(self):
        pd = pd_quotient(C4)
        self.assertEqual(pd.classes.blocks, (frozenset({0, 2}), frozenset({1, 3})))
        self.assertTrue(predicates(pd.membership).functional)

    def test_reconstruction(self):
        rng = random.Random(41)
        for _ in range(40):
            directed = rng.random() < 0.3
            n = rng.randint(1, 6)
            edges = [(u, v) for u in range(n) for v in range(n) if rng.random() < 0.3]
            if not directed:
                edges = [(u, v) for u, v in edges if u <= v]
            g = Graph.from_edges(n, edges, directed=directed)
            pd = pd_quotient(g)
            self.assertEqual(pd.reconstruct(), g)
            self.assertTrue(is_point_determining(pd.quotient))

    def test_nucleus_vertex(self):
        x = nucleus_vertex(P4)
        self.assertIsNotNone(x)
        self.assertTrue(is_point_determining(induced_subgraph(P4, [v for v in range(4) if v != x])))
        with self.assertRaises(PreconditionError):
            nucleus_vertex(P3)

    def test_strong_equivalence(self):
        self.assertTrue(strongly_equivalent(C4, K2))
        self.assertTrue(strongly_equivalent(P3, K2))
        self.assertFalse(strongly_equivalent(P4, K2))


class TestRelationalCores(unittest.TestCase):
    def test_r_core_of_even_cycle(self):
        self.assertEqual(r_core(C4), K2)
        self.assertTrue(weakly_equivalent(K2, C4))
        self.assertFalse(weakly_equivalent(K2, C6))
        self.assertTrue(is_r_core(C6))

    def test_path_on_five_vertices_separates(self):
        self.assertEqual(r_core_vertices(P5), [0, 1, 2, 3, 4])
        self.assertEqual(cocore_vertices(P5), [0, 1, 3, 4])
        self.assertEqual(cocore(P5), TWO_K2)
        self.assertTrue(partial_domain_equivalent(P5, TWO_K2))
        self.assertFalse(full_domain_equivalent(P5, TWO_K2))

    def test_path_on_three_vertices(self):
        self.assertEqual(cocore(P3), K2)
        self.assertEqual(r_core(P3), K2)

    def test_isolated_vertices_collapse_to_one(self):
        g = Graph.from_edges(5, [(0, 1)])
        self.assertEqual(r_core(g).n, 3)
        self.assertEqual(cocore(Graph.empty(4)), Graph.empty(1))

    def test_looped_complete_graph(self):
        for n in range(1, 5):
            self.assertEqual(cocore(looped_complete(n)), generate("single_loop", 1))

    def test_directed_rejected(self):
        with self.assertRaises(UnsupportedInput):
            r_core(generate("dicycle", 3))

    def test_retraction_and_coretraction(self):
        rel = find_retraction(P3, [1, 2])
        self.assertIsNotNone(rel)
        self.assertEqual(apply_strong(P3, rel), K2)
        self.assertTrue(predicates(rel).full_domain)
        co = find_coretraction(P5, [0, 1, 3, 4])
        self.assertEqual(apply_strong(TWO_K2, co), P5)

    def test_cocore_witness(self):
        w = cocore_witness(P5)
        self.assertEqual(w.vertices, (0, 1, 3, 4))
        self.assertEqual(apply_strong(w.cocore, w.coretraction), P5)


class TestProperties(unittest.TestCase):
    def test_property_n(self):
        self.assertTrue(has_property_N(C6))
        self.assertFalse(has_property_N(P4))
        self.assertTrue(has_property_N(generate("complete", 4)))
        self.assertTrue(has_property_N(Graph.empty(1)))
        self.assertFalse(has_property_N(Graph.empty(2)))

    def test_property_n_star(self):
        self.assertTrue(has_property_Nstar(P4))
        self.assertFalse(has_property_Nstar(P5))
        self.assertTrue(has_property_Nstar(C6))

    def test_minimal_basis(self):
        self.assertEqual(minimal_basis(P5), frozenset({0, 1, 3, 4}))
        with self.assertRaises(PreconditionError):
            minimal_basis(C4)

    def test_self_relations_of_a_path(self):
        # the identity plus one pair from a leaf to the other leaf also fixes P3
        self.assertFalse(self_relations_automorphic_oracle(P3))
        self.assertFalse(all_self_relations_automorphic(P3, check_oracle=True))
        self.assertTrue(all_self_relations_automorphic(C6, check_oracle=True))

    def test_rel_extremes(self):
        ext = rel_extremes(P4, K2)
        self.assertIn(Relation.of(4, 2, [(0, 0), (2, 0), (1, 1), (3, 1)]), ext.maximal)
        self.assertIn(Relation.of(4, 2, [(0, 0), (1, 1)]), ext.minimal)
        for low in ext.minimal:
            self.assertTrue(any(low <= high for high in ext.maximal))
            self.assertEqual(apply_strong(P4, low), K2)


class TestGraphCore(unittest.TestCase):
    def test_known_cores(self):
        self.assertEqual(graph_core(C6), K2)
        self.assertEqual(graph_core(generate("cycle", 5)), generate("cycle", 5))
        self.assertEqual(graph_core(Graph.from_edges(3, [(0, 1), (1, 2), (2, 2)])), generate("single_loop", 1))
        self.assertEqual(graph_core(Graph.empty(3)), Graph.empty(1))

    def test_retraction_fixes_the_core(self):
        g = disjoint_union(generate("cycle", 5), generate("path", 4))
        keep = graph_core_vertices(g)
        f = retraction_to_core(g)
        self.assertTrue(check_hom(f, g, g))
        self.assertEqual(set(f.values()), set(keep))
        self.assertTrue(all(f[v] == v for v in keep))


def loopfree_universe(max_n):
    return enumerate_universe(UniverseSpec(directed=False, loops=False, max_n=max_n))


def looped_universe(max_n):
    return enumerate_universe(UniverseSpec(directed=False, loops=True, max_n=max_n))


@pytest.mark.parametrize("loops", [False, pytest.param(True, marks=pytest.mark.slow)])
def test_r_core_matches_minimum_representative(loops):
    u = looped_universe(4) if loops else loopfree_universe(4)
    for g in u:
        assert is_isomorphic(r_core_oracle(g, u.graphs), r_core(g)), g


def test_cocore_matches_smallest_coretraction():
    for g in list(loopfree_universe(5)) + list(looped_universe(3)):
        assert cocore_oracle(g).n == cocore(g).n, g
        assert partial_domain_equivalent(g, cocore(g))


def test_cocore_is_property_n_star():
    for g in looped_universe(4):
        assert is_cocore(g) == has_property_Nstar(g), g


@pytest.mark.parametrize("loops, max_n", [(False, 4), (True, 3), pytest.param(True, 4, marks=pytest.mark.slow)])
def test_property_n_decides_automorphic_self_relations(loops, max_n):
    for g in enumerate_universe(UniverseSpec(directed=False, loops=loops, max_n=max_n)):
        # raises if the criterion and the exhaustive search disagree
        all_self_relations_automorphic(g, check_oracle=True)


def test_inclusion_chain():
    flags = []
    for g in loopfree_universe(5):
        row = (is_core(g), has_property_N(g), is_cocore(g), is_r_core(g), is_point_determining(g))
        for stronger, weaker in zip(row, row[1:]):
            assert weaker or not stronger, (g, row)
        flags.append(row)
    for k in range(3):
        assert any(row[k + 1] and not row[k] for row in flags), f"implication {k} is not strict"


def test_chain_witnesses():
    assert has_property_N(C6) and not is_core(C6)
    assert is_cocore(P4) and not has_property_N(P4)
    assert is_r_core(P5) and not is_cocore(P5)
    # vertex 0 is covered by 3 and 4 and dominated by 5
    g = Graph.from_edges(7, [(0, 1), (0, 2), (3, 1), (4, 2), (5, 1), (5, 2), (5, 6)])
    assert is_point_determining(g) and not is_r_core(g)


def test_graph_core_matches_brute_force():
    for g in loopfree_universe(4):
        assert graph_core(g).n == graph_core_oracle(g).n, g


@pytest.mark.parametrize("universe", ["loopfree4", "looped3"])
def test_self_relations_of_r_cores_contain_monomorphisms(universe):
    graphs = loopfree_universe(4) if universe == "loopfree4" else looped_universe(3)
    for g in graphs:
        if not is_r_core(g):
            continue
        for r in iter_relations(g, g, True):
            assert hall_check(r).satisfied, (g, r)
            f = extract_monomorphism(g, r, g)
            assert f is not None and all((x, f[x]) in r.pairs for x in f), (g, r)


@pytest.mark.parametrize("max_n", [5, pytest.param(6, marks=pytest.mark.slow)])
def test_point_determining_graphs_have_a_nucleus_vertex(max_n):
    for g in loopfree_universe(max_n):
        if g.n < 2 or not is_point_determining(g):
            continue
        x = nucleus_vertex(g)
        assert x is not None, g
        assert is_point_determining(induced_subgraph(g, [v for v in range(g.n) if v != x])), g
