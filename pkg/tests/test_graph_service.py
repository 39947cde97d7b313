import random
from itertools import combinations

import networkx as nx
import pytest

from src.exceptions.graph_exceptions import (
    BadParametersError,
    InsufficientSizeError,
    MalformedInputError,
    NotTriangleFreeError,
    OutOfRangeError,
    TooLargeError,
)
from src.models.graph_model import Graph
from src.services.base_service import BaseService
from src.services.graph_builders import (
    circulant_graph,
    complete_graph,
    cycle_graph,
    disjoint_union,
    empty_graph,
    join,
    path_graph,
    petersen_graph,
    star_graph,
)
from tests.helpers import all_graphs, random_graph, random_triangle_free, to_networkx


class TestGraphModel:
    def test_rejects_asymmetric_rows(self):
        with pytest.raises(MalformedInputError):
            Graph(2, (0b10, 0))

    def test_rejects_self_loop(self):
        with pytest.raises(MalformedInputError):
            Graph(1, (0b1,))

    def test_rejects_out_of_range_edge(self):
        with pytest.raises(OutOfRangeError):
            Graph.from_edges(3, [(0, 3)])

    def test_edges_are_lexicographic(self, c5):
        assert list(c5.edges()) == [(0, 1), (0, 4), (1, 2), (2, 3), (3, 4)]
        assert c5.edge_count == 5


class TestBuilders:
    def test_join_counts_cross_edges(self):
        g = join(complete_graph(2), cycle_graph(5))
        assert g.n == 7
        assert g.edge_count == 1 + 5 + 10

    def test_disjoint_union_shifts_labels(self):
        g = disjoint_union(path_graph(2), path_graph(3))
        assert list(g.edges()) == [(0, 1), (2, 3), (3, 4)]

    def test_circulant_is_regular(self):
        g = circulant_graph(13, [1, 5])
        assert all(g.degree(v) == 4 for v in range(13))
        assert g.has_edge(0, 12) and g.has_edge(0, 8)

    def test_star_and_petersen(self):
        assert star_graph(4).degree(0) == 4
        assert petersen_graph().edge_count == 15

    def test_short_cycle_is_rejected(self):
        with pytest.raises(BadParametersError):
            cycle_graph(2)


class TestStructure:
    def test_complement_of_c5_is_the_pentagram(self, graph_service, c5):
        complement = graph_service.complement(c5)
        assert list(complement.edges()) == [(0, 2), (0, 3), (1, 3), (1, 4), (2, 4)]

    def test_complement_is_an_involution(self, graph_service):
        for n in range(6):
            for g in all_graphs(n):
                assert graph_service.complement(graph_service.complement(g)) == g
        rng = random.Random(17)
        for _ in range(50):
            g = random_graph(rng.randint(6, 30), rng.random(), rng)
            assert graph_service.complement(graph_service.complement(g)) == g

    def test_components_after_removal(self, graph_service):
        profile = graph_service.components(path_graph(5), removed=[2])
        assert profile.components == (frozenset({0, 1}), frozenset({3, 4}))
        assert profile.odd_count == 0
        assert profile.histogram == {2: 2}

    def test_components_of_empty_graph(self, graph_service):
        profile = graph_service.components(empty_graph(3))
        assert len(profile) == 3
        assert profile.odd_count == 3

    def test_induced_relabels_in_order(self, graph_service, c5):
        induced = graph_service.induced(c5, [4, 1, 3])
        assert induced.labels == (1, 3, 4)
        assert list(induced.graph.edges()) == [(1, 2)]
        assert induced.lift([0, 2]) == frozenset({1, 4})

    def test_induced_rejects_foreign_vertices(self, graph_service, c5):
        with pytest.raises(OutOfRangeError):
            graph_service.induced(c5, [0, 7])

    def test_triangle_free(self, graph_service, c5):
        assert graph_service.is_triangle_free(c5)
        assert graph_service.is_triangle_free(petersen_graph())
        assert not graph_service.is_triangle_free(complete_graph(3))

    def test_clique_and_independent_predicates(self, graph_service, c5):
        assert graph_service.is_clique(c5, [0, 1])
        assert not graph_service.is_clique(c5, [0, 2])
        assert graph_service.is_independent(c5, [0, 2])
        assert graph_service.is_independent(c5, [])


class TestCliques:
    @pytest.mark.parametrize(
        "g, omega",
        [
            (complete_graph(5), 5),
            (cycle_graph(5), 2),
            (petersen_graph(), 2),
            (empty_graph(3), 1),
            (empty_graph(0), 0),
            (join(complete_graph(2), cycle_graph(5)), 4),
        ],
    )
    def test_clique_number(self, graph_service, g, omega):
        assert graph_service.clique_number(g) == omega

    def test_maximum_clique_is_a_clique(self, graph_service):
        g = join(complete_graph(2), cycle_graph(5))
        clique = graph_service.maximum_clique(g)
        assert len(clique) == 4
        assert graph_service.is_clique(g, clique)

    def test_independence_number(self, graph_service, c5):
        assert graph_service.independence_number(c5) == 2
        assert graph_service.independence_number(petersen_graph()) == 4

    def test_independence_number_matches_subset_search(self, graph_service):
        rng = random.Random(19)
        for _ in range(200):
            g = random_graph(rng.randint(1, 8), rng.random(), rng)
            expected = max(
                size
                for size in range(g.n + 1)
                for subset in combinations(range(g.n), size)
                if graph_service.is_independent(g, subset)
            )
            assert graph_service.independence_number(g) == expected

    def test_triangle_free_complement_means_alpha_two(self, graph_service):
        for n in range(1, 6):
            for g in all_graphs(n):
                complement = graph_service.complement(g)
                assert graph_service.is_triangle_free(complement) == (
                    graph_service.independence_number(g) <= 2
                )


    def test_matches_networkx_on_random_graphs(self, graph_service):
        rng = random.Random(7)
        for _ in range(60):
            g = random_graph(rng.randint(1, 12), rng.random(), rng)
            expected = max(len(c) for c in nx.find_cliques(to_networkx(g)))
            assert graph_service.clique_number(g) == expected

    def test_size_cap(self, settings):
        service = BaseService(settings.model_copy(update={"MAX_N": 4}))
        with pytest.raises(TooLargeError):
            service.ensure_size(empty_graph(5))


class TestIndependentSets:
    def test_high_degree_vertex_answers(self, graph_service):
        assert graph_service.find_independent_set(star_graph(4), 4) == frozenset({1, 2, 3, 4})

    def test_neighbourhood_of_first_vertex(self, graph_service, c5):
        assert graph_service.find_independent_set(c5, 2) == frozenset({1, 4})

    def test_search_on_low_degree_graph(self, graph_service):
        g = cycle_graph(9)
        found = graph_service.find_independent_set(g, 4)
        assert len(found) == 4
        assert graph_service.is_independent(g, found)

    def test_below_ramsey_bound(self, graph_service, c5):
        with pytest.raises(InsufficientSizeError):
            graph_service.find_independent_set(c5, 3)

    def test_bad_k(self, graph_service, c5):
        with pytest.raises(BadParametersError):
            graph_service.find_independent_set(c5, 5)

    def test_triangle_rejected(self, graph_service):
        with pytest.raises(NotTriangleFreeError):
            graph_service.find_independent_set(complete_graph(3), 2)

    @pytest.mark.parametrize("k, n_min", [(3, 6), (4, 9)])
    def test_ramsey_guarantee(self, graph_service, k, n_min):
        rng = random.Random(k)
        for _ in range(300):
            g = random_triangle_free(rng.randint(n_min, n_min + 5), rng)
            found = graph_service.find_independent_set(g, k)
            assert len(found) == k
            assert graph_service.is_independent(g, found)

    @pytest.mark.slow
    @pytest.mark.parametrize("k, n_min", [(3, 6), (4, 9)])
    def test_ramsey_guarantee_at_scale(self, graph_service, k, n_min):
        rng = random.Random(100 + k)
        for _ in range(100_000):
            g = random_triangle_free(rng.randint(n_min, n_min + 8), rng)
            assert graph_service.is_independent(g, graph_service.find_independent_set(g, k))
