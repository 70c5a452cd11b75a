import itertools
import os
import random
import sys
import unittest
import unittest.mock

import numpy as np
import pytest

# Ensure project root is on sys.path for imports
sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from relgraph.cores import rel_extremes
from relgraph.enumeration import UniverseSpec, enumerate_universe
from relgraph.errors import InvalidParameter, PreconditionError
from relgraph.families import generate
from relgraph.graph import Graph, complement, components, distance, induced_subgraph, is_complete_multipartite, radius
from relgraph.homomorphisms import check_hom, chromatic_number
from relgraph.oracles import all_relations, brute_relation_exists, brute_relations
from relgraph.relations import (
    Relation,
    apply_strong,
    apply_weak,
    apply_weighted,
    compose,
    decompose,
    extract_monomorphism,
    generated,
    hall_check,
    is_reversible,
    predicates,
    transpose,
)
from relgraph.search import RelationSearch, find_relation, iter_relations, relation_exists

K2 = generate("complete", 2)
K3 = generate("complete", 3)
C3 = generate("cycle", 3)
P3 = generate("path", 3)


def random_graph(n, rng, p=0.5, loops=True, directed=False):
    if directed:
        edges = [(u, v) for u in range(n) for v in range(n) if u != v and rng.random() < p]
    else:
        edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    if loops:
        edges += [(v, v) for v in range(n) if rng.random() < 0.25]
    return Graph.from_edges(n, edges, directed=directed)


def random_relation(src_n, dst_n, rng, density=0.35, full_image=True):
    pairs = {(x, b) for x in range(src_n) for b in range(dst_n) if rng.random() < density}
    if full_image:
        for b in range(dst_n):
            if not any(p[1] == b for p in pairs):
                pairs.add((rng.randrange(src_n), b))
    return Relation.of(src_n, dst_n, pairs)


class TestRelationValue(unittest.TestCase):
    def test_out_of_range_pair(self):
        with self.assertRaises(InvalidParameter):
            Relation.of(2, 2, [(0, 2)])

    def test_views(self):
        r = Relation.of(3, 2, [(0, 0), (0, 1), (2, 1)])
        self.assertEqual(r.images, (frozenset({0, 1}), frozenset(), frozenset({1})))
        self.assertEqual(r.preimages, (frozenset({0}), frozenset({0, 2})))
        self.assertEqual(r.domain, frozenset({0, 2}))
        self.assertIsNone(r.as_mapping())
        f = Relation.from_mapping({0: 1, 1: 1, 2: 0}, 3, 2)
        self.assertEqual(f.as_mapping(), {0: 1, 1: 1, 2: 0})
        self.assertTrue(predicates(f).functional)
        np.testing.assert_array_equal(r.matrix(), np.array([[1, 1], [0, 0], [0, 1]]))

    def test_predicates(self):
        flags = predicates(Relation.of(3, 2, [(0, 0), (1, 1)]))
        self.assertFalse(flags.full_domain)
        self.assertTrue(flags.full_image)
        self.assertTrue(flags.functional)
        self.assertTrue(flags.injective)

    def test_containment(self):
        small = Relation.of(2, 2, [(0, 0)])
        big = Relation.of(2, 2, [(0, 0), (1, 1)])
        self.assertTrue(small <= big)
        self.assertTrue(small < big)
        self.assertFalse(big < big)


class TestOperators(unittest.TestCase):
    def test_contracting_triangle_edge(self):
        r = Relation.of(3, 2, [(0, 0), (1, 1)])
        self.assertEqual(apply_strong(C3, r), K2)

    def test_splitting_vertex(self):
        r = Relation.of(2, 3, [(0, 0), (0, 2), (1, 1)])
        self.assertEqual(apply_strong(K2, r), P3)

    def test_no_relation_from_edge_to_triangle(self):
        self.assertIsNone(find_relation(K2, C3))
        self.assertFalse(brute_relation_exists(K2, C3))

    def test_uncovered_target_rejected(self):
        with self.assertRaises(PreconditionError):
            apply_strong(K2, Relation.of(2, 3, [(0, 0), (1, 1)]))

    def test_identity_is_neutral(self):
        rng = random.Random(2)
        for _ in range(20):
            g = random_graph(rng.randint(1, 5), rng)
            self.assertEqual(apply_strong(g, Relation.identity(g.n)), g)

    def test_functional_relation_merges_vertices(self):
        k5 = generate("complete", 5)
        r = Relation.of(5, 3, [(0, 0), (1, 0), (2, 1), (3, 1), (4, 2)])
        strong = apply_strong(k5, r)
        self.assertEqual(strong.loops, frozenset({0, 1}))
        self.assertEqual(apply_weak(k5, r), K3)


class TestComposition(unittest.TestCase):
    def test_strong_operator_composes(self):
        rng = random.Random(7)
        for _ in range(60):
            directed = rng.random() < 0.3
            g = random_graph(rng.randint(1, 5), rng, directed=directed)
            r = random_relation(g.n, rng.randint(1, 4), rng)
            s = random_relation(r.dst_n, rng.randint(1, 4), rng)
            self.assertEqual(apply_strong(apply_strong(g, r), s), apply_strong(g, compose(r, s)))

    def test_weak_operator_does_not_compose(self):
        r = Relation.of(3, 2, [(0, 0), (2, 0), (1, 1)])
        s = Relation.of(2, 3, [(0, 0), (0, 2), (1, 1)])
        self.assertEqual(apply_weak(K3, r), K2)
        self.assertEqual(apply_weak(apply_weak(K3, r), s), P3)
        self.assertEqual(apply_weak(K3, compose(r, s)), K3)

    def test_compose_size_mismatch(self):
        with self.assertRaises(InvalidParameter):
            compose(Relation.identity(2), Relation.identity(3))

    def test_transpose_is_an_involution(self):
        r = Relation.of(3, 2, [(0, 1), (2, 0)])
        self.assertEqual(transpose(transpose(r)), r)
        self.assertEqual(transpose(r).pairs, frozenset({(1, 0), (0, 2)}))


class TestWeighted(unittest.TestCase):
    def test_support_matches_strong_operator(self):
        rng = random.Random(13)
        for _ in range(30):
            g = random_graph(rng.randint(1, 5), rng)
            r = random_relation(g.n, rng.randint(1, 4), rng)
            weighted = apply_weighted(g.adjacency_matrix(), r)
            np.testing.assert_array_equal(weighted > 0, apply_strong(g, r).adjacency_matrix() > 0)

    def test_counts_parallel_edges(self):
        r = Relation.of(3, 2, [(0, 0), (1, 0), (2, 1)])
        weighted = apply_weighted(K3.adjacency_matrix(), r)
        np.testing.assert_array_equal(weighted, np.array([[2, 2], [2, 0]]))

    def test_shape_mismatch(self):
        with self.assertRaises(InvalidParameter):
            apply_weighted(np.zeros((2, 2)), Relation.identity(3))


class TestDecomposition(unittest.TestCase):
    def test_factors_recompose(self):
        rng = random.Random(17)
        for _ in range(40):
            g = random_graph(rng.randint(1, 5), rng)
            r = random_relation(g.n, rng.randint(1, 4), rng, density=0.3)
            parts = decompose(r)
            self.assertEqual(compose(compose(parts.i_a, parts.r_d), parts.r_c), r)
            self.assertEqual(parts.factor_graph(g), apply_strong(g, r))

    def test_factor_shapes(self):
        r = Relation.of(3, 2, [(0, 1), (2, 0), (2, 1)])
        parts = decompose(r)
        self.assertEqual(parts.domain, (0, 2))
        self.assertEqual(parts.r_d.dst_n, 3)
        self.assertTrue(predicates(parts.r_d).injective)
        self.assertTrue(predicates(parts.r_c).functional)


class TestHall(unittest.TestCase):
    def test_violation_witness(self):
        result = hall_check(Relation.of(3, 2, [(0, 0), (1, 0), (2, 1)]))
        self.assertFalse(result.satisfied)
        self.assertEqual(result.witness, frozenset({0, 1}))

    def test_matching_found(self):
        r = Relation.of(3, 3, [(0, 0), (0, 1), (1, 0), (2, 2)])
        result = hall_check(r)
        self.assertTrue(result.satisfied)
        self.assertEqual(len(set(result.matching.values())), 3)
        self.assertTrue(all((x, b) in r.pairs for x, b in result.matching.items()))

    def test_random_witnesses_are_violations(self):
        rng = random.Random(19)
        for _ in range(80):
            r = random_relation(rng.randint(1, 6), rng.randint(1, 5), rng, density=0.25, full_image=False)
            result = hall_check(r)
            if result.satisfied:
                self.assertEqual(set(result.matching), set(r.domain))
            else:
                self.assertGreater(len(result.witness), len(r.image_of(result.witness)))

    def test_monomorphism_inside_relation(self):
        r = Relation.of(2, 3, [(0, 0), (0, 2), (1, 1)])
        f = extract_monomorphism(K2, r, P3)
        self.assertIsNotNone(f)
        self.assertTrue(check_hom(f, K2, P3))
        self.assertTrue(all((x, b) in r.pairs for x, b in f.items()))

    def test_monomorphism_needs_matching_targets(self):
        r = Relation.of(3, 2, [(0, 0), (2, 0), (1, 1)])
        self.assertIsNone(extract_monomorphism(P3, r, K2))


class TestReversibility(unittest.TestCase):
    def test_twins_fold_back(self):
        r = Relation.of(3, 2, [(0, 0), (2, 0), (1, 1)])
        self.assertTrue(is_reversible(P3, r))

    def test_non_twins_do_not(self):
        r = Relation.of(3, 2, [(0, 0), (2, 0), (1, 1)])
        self.assertFalse(is_reversible(K3, r))

    def test_partial_domain_is_not_reversible(self):
        self.assertFalse(is_reversible(C3, Relation.of(3, 2, [(0, 0), (1, 1)])))

    def test_random_agreement(self):
        # is_reversible raises if its criterion and the direct check disagree
        rng = random.Random(23)
        for _ in range(80):
            g = random_graph(rng.randint(1, 5), rng, directed=rng.random() < 0.3)
            is_reversible(g, random_relation(g.n, rng.randint(1, 4), rng))


class TestRelationSearch(unittest.TestCase):
    def test_search_matches_brute_force(self):
        rng = random.Random(29)
        for _ in range(40):
            g = random_graph(rng.randint(1, 4), rng)
            h = random_graph(rng.randint(1, 4), rng)
            for full in (False, True):
                self.assertEqual(relation_exists(g, h, full), brute_relation_exists(g, h, full))

    def test_found_relations_are_solutions(self):
        for r in iter_relations(P3, K2, True):
            self.assertEqual(apply_strong(P3, r), K2)
            self.assertTrue(predicates(r).full_domain)

    def test_required_pairs_are_kept(self):
        r = find_relation(K2, P3, required=[(0, 2)])
        self.assertIsNotNone(r)
        self.assertIn((0, 2), r.pairs)

    def test_too_many_source_vertices(self):
        with self.assertRaises(InvalidParameter):
            find_relation(generate("path", 30), K2)


def strong_images(g, max_target):
    for m in range(1, max_target + 1):
        for r in all_relations(g.n, m):
            if predicates(r).full_image:
                yield apply_strong(g, r), apply_weak(g, r)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_strong_images_of_complete_graphs(k):
    for strong, _ in strong_images(generate("complete", k), 4 if k < 3 else 3):
        if strong.loops:
            continue
        assert is_complete_multipartite(strong)
        assert len(components(complement(strong, simple=True))) <= k


@pytest.mark.parametrize("k", [1, 2, 3])
def test_weak_images_of_complete_graphs(k):
    for _, weak in strong_images(generate("complete", k), 4 if k < 3 else 3):
        if k == 1:
            assert weak.edge_count == 0
            continue
        assert is_complete_multipartite(weak)
        big = [c for c in components(complement(weak, simple=True)) if len(c) >= 2]
        assert len(big) <= k


def undirected_universe(max_n, loops):
    return enumerate_universe(UniverseSpec(directed=False, loops=loops, max_n=max_n))


def solutions(graphs, max_target, full_domain=False):
    """Every (g, r, g * r) with full image and at most max_target target vertices."""
    for g in graphs:
        for m in range(1, max_target + 1):
            for r in all_relations(g.n, m):
                flags = predicates(r)
                if flags.full_image and (flags.full_domain or not full_domain):
                    yield g, r, apply_strong(g, r)


@pytest.mark.parametrize("max_n", [3, pytest.param(4, marks=pytest.mark.slow)])
def test_full_domain_does_not_lower_chromatic_number(max_n):
    for g, r, h in solutions(undirected_universe(max_n, loops=False), 3, full_domain=True):
        if h.loops:
            continue
        assert chromatic_number(g) <= chromatic_number(h), (g, r)


@pytest.mark.parametrize("loops", [False, True])
def test_relation_splits_over_target_components(loops):
    for g, r, h in solutions(undirected_universe(3, loops), 3):
        comps = components(h)
        pre = [frozenset(x for x, b in r.pairs if b in c) for c in comps]
        for comp in comps:
            index = {b: i for i, b in enumerate(sorted(comp))}
            part = Relation.of(g.n, len(comp), ((x, index[b]) for x, b in r.pairs if b in comp))
            assert generated(g, part) == induced_subgraph(h, comp), (g, r)
        for i, j in itertools.permutations(range(len(comps)), 2):
            assert not any(u in pre[i] and v in pre[j] for u, v in g.edges), (g, r)


@pytest.mark.parametrize("loops", [False, True])
def test_full_domain_contracts_distances(loops):
    for g, r, h in solutions(undirected_universe(3, loops), 3, full_domain=True):
        for x, u in r.pairs:
            for y, v in r.pairs:
                if x != y:
                    assert distance(h, u, v) <= distance(g, x, y), (g, r)
                elif g.out_nbrs[x]:
                    assert distance(h, u, v) <= 2, (g, r)


@pytest.mark.parametrize("loops", [False, True])
def test_radius_bound_for_connected_graphs(loops):
    for g, r, h in solutions(undirected_universe(3, loops), 3, full_domain=True):
        if len(components(g)) == 1 and len(components(h)) == 1:
            assert radius(h) <= max(radius(g), 2), (g, r)


@pytest.mark.parametrize("loops", [False, True])
def test_relation_restricts_to_local_subgraphs(loops):
    for g, r, h in solutions(undirected_universe(3, loops), 3):
        for x, u in r.pairs:
            if g.has_loop(x):
                continue
            keep_g = [y for y in range(g.n) if y != x and y not in g.out_nbrs[x]]
            keep_h = [v for v in range(h.n) if v != u and v not in h.out_nbrs[u]]
            index_g = {y: i for i, y in enumerate(keep_g)}
            index_h = {v: i for i, v in enumerate(keep_h)}
            local = Relation.of(len(keep_g), len(keep_h),
                                ((index_g[y], index_h[v]) for y, v in r.pairs if y in index_g and v in index_h))
            assert generated(induced_subgraph(g, keep_g), local) == induced_subgraph(h, keep_h), (g, r, x, u)


@pytest.mark.parametrize("g, h", [
    (generate("path", 4), K2),
    (P3, K2),
    (generate("cycle", 4), K2),
    (K2, P3),
])
def test_relations_between_extremes_are_solutions(g, h):
    ext = rel_extremes(g, h)
    assert ext.count == sum(1 for _ in brute_relations(g, h))
    for low in ext.minimal:
        for high in ext.maximal:
            if not low <= high:
                continue
            extra = sorted(high.pairs - low.pairs)
            for k in range(len(extra) + 1):
                for chosen in itertools.combinations(extra, k):
                    r = Relation.of(g.n, h.n, low.pairs | set(chosen))
                    assert apply_strong(g, r) == h, r


class TestBruteForceOracles(unittest.TestCase):
    def test_matches_engine(self):
        for g, h in [(P3, K2), (C3, K2), (K2, P3), (generate("cycle", 4), K2)]:
            self.assertEqual(set(brute_relations(g, h)), set(iter_relations(g, h)))
            self.assertEqual(set(brute_relations(g, h, True)), set(iter_relations(g, h, True)))

    def test_required_pairs(self):
        # P3 onto K2 needs both leaves on one side
        self.assertTrue(brute_relation_exists(P3, K2, required=[(0, 0), (2, 0)]))
        self.assertFalse(brute_relation_exists(P3, K2, required=[(0, 0), (1, 0)]))

    def test_independent_of_search_engine(self):
        def refuse(*args, **kwargs):
            raise AssertionError("oracle used the search engine")

        with unittest.mock.patch.object(RelationSearch, "relations", refuse):
            self.assertTrue(brute_relation_exists(P3, K2, True))
            self.assertEqual(len(list(brute_relations(K2, K2))), 2)

    def test_too_many_free_pairs(self):
        with self.assertRaises(InvalidParameter):
            brute_relation_exists(generate("path", 5), generate("path", 4))
