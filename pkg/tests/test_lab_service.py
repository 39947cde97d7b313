import io
from itertools import permutations

import pytest

from src.exceptions.graph_exceptions import BadParametersError, TooLargeError
from src.models.graph_model import Graph
from src.models.sweep_model import FailureReason, SweepFailure, SweepReport
from src.services.graph_builders import cycle_graph, empty_graph, petersen_graph
from src.services.lab_service import CERTIFIED, IN_FLIGHT_PER_WORKER, LabService
from tests.helpers import all_graphs


class TestEnumeration:
    @pytest.mark.parametrize("n, count", [(1, 0), (2, 1), (3, 6), (4, 40), (5, 387)])
    def test_labelled_counts(self, lab, n, count):
        assert sum(1 for _ in lab.enumerate_alpha2(n)) == count

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_matches_brute_force(self, lab, graph_service, n):
        expected = {g for g in all_graphs(n) if graph_service.independence_number(g) == 2}
        found = list(lab.enumerate_alpha2(n))
        assert len(found) == len(set(found))
        assert set(found) == expected

    @pytest.mark.parametrize("n, count", [(3, 2), (4, 6), (5, 13), (6, 37)])
    def test_dedup_counts(self, lab, n, count):
        assert sum(1 for _ in lab.enumerate_alpha2(n, dedup=True)) == count

    @pytest.mark.parametrize("n", [3, 4, 5])
    def test_dedup_covers_every_labelled_graph(self, lab, n):
        classes = {lab.canonical_form(g) for g in lab.enumerate_alpha2(n, dedup=True)}
        assert {lab.canonical_form(g) for g in lab.enumerate_alpha2(n)} == classes

    @pytest.mark.parametrize(
        "n, count", [(0, 1), (1, 1), (2, 2), (3, 3), (4, 7), (5, 14), (6, 38), (7, 107)]
    )
    def test_triangle_free_classes(self, lab, graph_service, n, count):
        classes = lab.triangle_free_classes(n)
        assert len(classes) == count
        assert all(graph_service.is_triangle_free(h) for h in classes)

    @pytest.mark.slow
    @pytest.mark.parametrize("n, count", [(8, 410), (9, 1897)])
    def test_triangle_free_classes_at_scale(self, lab, n, count):
        assert len(lab.triangle_free_classes(n)) == count

    def test_caps(self, lab, settings):
        with pytest.raises(TooLargeError):
            next(lab.enumerate_alpha2(settings.ENUMERATION_MAX_N + 1))
        with pytest.raises(TooLargeError):
            next(lab.enumerate_alpha2(settings.DEDUP_MAX_N + 1, dedup=True))

    def test_canonical_form_ignores_labels(self, lab, graph_service, c5):
        pentagram = graph_service.complement(c5)
        assert lab.canonical_form(pentagram) == lab.canonical_form(c5)
        assert lab.canonical_form(pentagram) != lab.canonical_form(empty_graph(5))

    @pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
    def test_canonical_form_is_least_relabelling(self, lab, n):
        cells = [(u, v) for v in range(1, n) for u in range(v)]
        for g in all_graphs(n):
            least = min(
                bytes(g.has_edge(perm[u], perm[v]) for u, v in cells)
                for perm in permutations(range(n))
            )
            assert lab.canonical_form(g) == least

    def test_canonical_form_of_transitive_graphs(self, lab, graph_service):
        petersen = petersen_graph()
        relabelled = Graph.from_edges(10, [((u * 3) % 10, (v * 3) % 10) for u, v in petersen.edges()])
        assert lab.canonical_form(relabelled) == lab.canonical_form(petersen)
        assert lab.canonical_form(cycle_graph(9)) != lab.canonical_form(
            graph_service.complement(cycle_graph(9))
        )


class TestRandom:
    def test_deterministic_per_seed(self, lab):
        assert lab.random_alpha2(9, 42) == lab.random_alpha2(9, 42)

    @pytest.mark.parametrize("seed", range(10))
    def test_independence_number_two(self, lab, graph_service, seed):
        g = lab.random_alpha2(2 + seed, seed)
        assert graph_service.independence_number(g) == 2

    def test_complement_is_triangle_free(self, lab, graph_service):
        for seed in range(50):
            complement = graph_service.complement(lab.random_alpha2(12, seed))
            assert complement.edge_count
            assert graph_service.is_triangle_free(complement)

    def test_order_cap(self, settings):
        lab = LabService(settings.model_copy(update={"MAX_N": 10}))
        with pytest.raises(TooLargeError):
            lab.random_alpha2(11, 0)


class TestExamples:
    def test_first_example(self, lab, graph_service, chromatic_service):
        g = lab.example1(3, 3)
        assert g.n == 7
        assert chromatic_service.chi_value(g) == 5
        assert graph_service.clique_number(g) == 4

    def test_second_example(self, lab, graph_service, chromatic_service):
        g = lab.example2(4, 4)
        assert g.n == 11
        assert chromatic_service.chi_value(g) == 7
        assert graph_service.clique_number(g) == 5
        assert graph_service.independence_number(g) == 2

    @pytest.mark.parametrize(
        "s, t", [(s, t) for s in range(2, 5) for t in range(s, 8) if s + t <= 9]
    )
    def test_first_family_metadata(self, lab, splitter, graph_service, chromatic_service, s, t):
        g = lab.example1(s, t)
        assert g.n == s + t + 1
        assert graph_service.independence_number(g) == 2
        assert graph_service.clique_number(g) == s + t - 2
        assert chromatic_service.chi_value(g) == s + t - 1
        assert splitter.splittable_bruteforce(g, s, t + 1) is None

    @pytest.mark.parametrize(
        "s, t", [(s, t) for s in range(2, 5) for t in range(s, 8) if 7 <= s + t <= 9]
    )
    def test_second_family_metadata(self, lab, splitter, graph_service, chromatic_service, s, t):
        g = lab.example2(s, t)
        assert g.n == s + t + 3
        assert graph_service.independence_number(g) == 2
        assert graph_service.clique_number(g) == s + t - 3
        assert chromatic_service.chi_value(g) == s + t - 1
        assert splitter.splittable_bruteforce(g, s, t + 2) is None
        assert (splitter.splittable_bruteforce(g, s, t + 1) is not None) == (s >= 4)

    @pytest.mark.parametrize("s, t", [(3, 2), (1, 3)])
    def test_first_example_parameters(self, lab, s, t):
        with pytest.raises(BadParametersError):
            lab.example1(s, t)

    @pytest.mark.parametrize("s, t", [(3, 3), (2, 4), (4, 3)])
    def test_second_example_parameters(self, lab, s, t):
        with pytest.raises(BadParametersError):
            lab.example2(s, t)


class TestSweep:
    def test_exhaustive_small_orders_are_confirmed(self, lab):
        report = lab.sweep(5)
        assert report.graphs_checked == 1 + 6 + 40 + 387
        assert report.instance_count > 0
        assert report.hypothesis_instances == 0
        assert report.confirmed
        assert (report.n_min, report.n_max, report.mode) == (2, 5, "exhaustive")

    def test_isomorphism_class_sweep(self, lab):
        report = lab.sweep(6, dedup=True)
        assert report.graphs_checked == 1 + 2 + 6 + 13 + 37
        assert report.hypothesis_instances == 0
        assert report.confirmed

    @pytest.mark.slow
    def test_isomorphism_classes_up_to_nine(self, lab):
        report = lab.sweep(9, dedup=True)
        assert report.graphs_checked == 1 + 2 + 6 + 13 + 37 + 106 + 409 + 1896
        assert report.hypothesis_instances == 0
        assert report.confirmed

    @pytest.mark.slow
    def test_labelled_graphs_up_to_seven(self, lab):
        report = lab.sweep(7)
        assert report.hypothesis_instances == 0
        assert report.confirmed

    def test_budget_limits_exhaustive_sweep(self, lab):
        assert lab.sweep(5, budget=10).graphs_checked == 10

    def test_exhaustive_cap(self, lab, settings):
        with pytest.raises(TooLargeError):
            lab.sweep(settings.EXHAUSTIVE_SWEEP_MAX_N + 1)

    @pytest.mark.parametrize("kwargs", [{"n_max": 3, "n_min": 4}, {"n_max": 4, "mode": "grid"}])
    def test_bad_parameters(self, lab, kwargs):
        with pytest.raises(BadParametersError):
            lab.sweep(**kwargs)

    def test_random_sweep_is_deterministic(self, lab):
        first = lab.sweep(8, mode="random", budget=20, seed=3, n_min=4)
        second = lab.sweep(8, mode="random", budget=20, seed=3, n_min=4)
        assert first.graphs_checked == second.graphs_checked == 20
        assert first.instance_count == second.instance_count
        assert first.hypothesis_instances == second.hypothesis_instances == 0

    def test_process_pool_agrees(self, settings):
        sequential = LabService(settings).sweep(4)
        pooled = LabService(settings.model_copy(update={"SWEEP_BATCH_SIZE": 8})).sweep(
            4, workers=2
        )
        assert pooled.graphs_checked == sequential.graphs_checked
        assert pooled.instance_count == sequential.instance_count

    def test_process_pool_keeps_few_batches_queued(self, settings, monkeypatch):
        pulled = []
        pulled_at_merge = []
        merge = SweepReport.merge

        def recording_merge(report, partial):
            pulled_at_merge.append(len(pulled))
            return merge(report, partial)

        def stream():
            for i in range(50):
                pulled.append(i)
                yield cycle_graph(5)

        monkeypatch.setattr(SweepReport, "merge", recording_merge)
        lab = LabService(settings.model_copy(update={"SWEEP_BATCH_SIZE": 1}))
        report = lab.sweep_graphs(stream(), workers=2)

        assert report.graphs_checked == 50
        assert pulled_at_merge[0] <= IN_FLIGHT_PER_WORKER * 2
        assert all(b - a <= 1 for a, b in zip(pulled_at_merge, pulled_at_merge[1:]))

    def test_counterexamples_of_second_example(self, lab):
        report = lab.sweep_graphs([lab.example2(4, 4)])
        assert report.instance_count == 3
        assert report.hypothesis_instances == 3
        assert report.branch_histogram == {"CASE1_SUB1": 1}
        assert [(f.s, f.t, f.reason) for f in report.failures] == [
            (2, 6, FailureReason.POTENTIAL_COUNTEREXAMPLE),
            (3, 5, FailureReason.POTENTIAL_COUNTEREXAMPLE),
        ]
        assert not report.confirmed
        assert (report.n_min, report.n_max, report.mode) == (11, 11, "explicit")

    def test_graphs_without_alpha_two_are_skipped(self, lab):
        report = lab.sweep_graphs([cycle_graph(7), cycle_graph(5)])
        assert report.graphs_checked == 2
        assert report.instance_count == 1
        assert report.hypothesis_instances == 0

    def test_replay(self, lab):
        g6 = lab.graph_repository.serialize_graph6(lab.example2(4, 4)).decode()
        assert lab.replay(SweepFailure(g6, 4, 4, "")) == CERTIFIED
        assert lab.replay(SweepFailure(g6, 3, 5, "")) == FailureReason.POTENTIAL_COUNTEREXAMPLE


def test_sweep_report_lines(lab, report_repository):
    report = lab.sweep_graphs([lab.example2(3, 4)])
    stream = io.StringIO()
    report_repository.write_sweep(report, stream)

    lines = stream.getvalue().splitlines()
    assert len(lines) == 3
    assert lines[-1].startswith('{"summary":{')
    failures = report_repository.read_failures(lines)
    assert [(f.s, f.t) for f in failures] == [(2, 5), (3, 4)]
    assert lab.replay(failures[0]) == FailureReason.POTENTIAL_COUNTEREXAMPLE
