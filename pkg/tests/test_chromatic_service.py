import random

import pytest

from src.exceptions.graph_exceptions import AlphaTooLargeError, OutOfRangeError, TooLargeError
from src.services.graph_builders import (
    complete_graph,
    cycle_graph,
    empty_graph,
    join,
    path_graph,
    petersen_graph,
)


class TestChiAlpha2:
    @pytest.mark.parametrize(
        "g, chi",
        [
            (cycle_graph(5), 3),
            (complete_graph(5), 5),
            (empty_graph(2), 1),
            (join(complete_graph(2), cycle_graph(5)), 5),
            (join(cycle_graph(5), cycle_graph(5)), 6),
        ],
    )
    def test_known_values(self, chromatic_service, g, chi):
        certificate = chromatic_service.chi_alpha2(g)
        assert certificate.chi == chi
        assert certificate.lower_bound == chi
        assert chromatic_service.chi_value(g) == chi

    def test_coloring_is_proper(self, chromatic_service, circulant13):
        certificate = chromatic_service.chi_alpha2(circulant13)
        assert certificate.chi == 7
        assert len(certificate.coloring) == 7
        assert chromatic_service.verify_coloring(circulant13, certificate.coloring)

    def test_rejects_three_independent_vertices(self, chromatic_service):
        with pytest.raises(AlphaTooLargeError):
            chromatic_service.chi_alpha2(empty_graph(3))

    def test_agrees_with_oracle_on_enumerated_graphs(self, chromatic_service, lab):
        for n in range(2, 6):
            for g in lab.enumerate_alpha2(n):
                assert chromatic_service.chi_value(g) == chromatic_service.chi_bruteforce(g)

    def test_agrees_with_oracle_on_isomorphism_classes(self, chromatic_service, lab):
        for n in range(6, 8):
            for g in lab.enumerate_alpha2(n, dedup=True):
                assert chromatic_service.chi_value(g) == chromatic_service.chi_bruteforce(g)

    @pytest.mark.slow
    def test_agrees_with_oracle_at_scale(self, chromatic_service, lab):
        for g in lab.enumerate_alpha2(8, dedup=True):
            assert chromatic_service.chi_value(g) == chromatic_service.chi_bruteforce(g)
        rng = random.Random(31)
        for _ in range(5000):
            g = lab.random_alpha2(rng.randint(2, 14), rng.getrandbits(32))
            assert chromatic_service.chi_alpha2(g).chi == chromatic_service.chi_bruteforce(g)

    def test_agrees_with_oracle_on_random_graphs(self, chromatic_service, lab):
        rng = random.Random(13)
        for _ in range(60):
            g = lab.random_alpha2(rng.randint(6, 12), rng.getrandbits(32))
            assert chromatic_service.chi_alpha2(g).chi == chromatic_service.chi_bruteforce(g)


class TestLowerBound:
    def test_c5(self, chromatic_service, c5):
        assert chromatic_service.chi_lower_bound(c5, []) == 3
        assert chromatic_service.chi_lower_bound(c5, [0]) == 2

    def test_bound_never_exceeds_chi(self, chromatic_service, circulant13):
        for p in ([], [0], [0, 1], [2, 7, 11]):
            assert chromatic_service.chi_lower_bound(circulant13, p) <= 7

    def test_out_of_range(self, chromatic_service, c5):
        with pytest.raises(OutOfRangeError):
            chromatic_service.chi_lower_bound(c5, [5])


class TestBruteforce:
    @pytest.mark.parametrize(
        "g, chi",
        [
            (empty_graph(0), 0),
            (empty_graph(4), 1),
            (path_graph(4), 2),
            (cycle_graph(7), 3),
            (petersen_graph(), 3),
            (complete_graph(6), 6),
        ],
    )
    def test_known_values(self, chromatic_service, g, chi):
        assert chromatic_service.chi_bruteforce(g) == chi

    def test_oracle_cap(self, chromatic_service):
        with pytest.raises(TooLargeError):
            chromatic_service.chi_bruteforce(cycle_graph(15))


def test_verify_coloring(chromatic_service, c5):
    assert chromatic_service.verify_coloring(c5, [{0, 2}, {1, 3}, {4}])
    assert not chromatic_service.verify_coloring(c5, [{0, 1}, {2, 3}, {4}])
    assert not chromatic_service.verify_coloring(c5, [{0, 2}, {1, 3}])
    assert not chromatic_service.verify_coloring(c5, [{0, 2}, {2, 4}, {1, 3}])
