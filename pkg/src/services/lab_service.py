import random
import sys
import time
from collections import deque
from collections.abc import Iterable, Iterator
from concurrent.futures import Future, ProcessPoolExecutor
from itertools import islice

from loguru import logger
from tqdm import tqdm

from src.core.config import Settings
from src.exceptions.graph_exceptions import (
    BadParametersError,
    BaseGraphError,
    PotentialCounterexampleError,
    TooLargeError,
)
from src.models.graph_model import Graph
from src.models.sweep_model import FailureReason, SweepFailure, SweepMode, SweepReport
from src.repositories.graph_repository import GraphRepository
from src.schema.report_schema import FailureRecord
from src.schema.split_schema import SplitRequest
from src.services.base_service import BaseService
from src.services.chromatic_service import ChromaticService
from src.services.graph_builders import complete_graph, cycle_graph, join
from src.services.graph_service import GraphService
from src.services.splitter_service import SplitterService

CERTIFIED = "CERTIFIED"
DEFAULT_RANDOM_BUDGET = 100
# Batches queued per worker before the oldest result is merged
IN_FLIGHT_PER_WORKER = 2


class LabService(BaseService):
    """Instance generation and verification sweeps."""

    def __init__(self, settings: Settings | None = None):
        super().__init__(settings)
        self.graph_service = GraphService(self.settings)
        self.chromatic_service = ChromaticService(self.settings)
        self.splitter = SplitterService(self.settings)
        self.graph_repository = GraphRepository(self.settings)

    def enumerate_alpha2(self, n: int, dedup: bool = False) -> Iterator[Graph]:
        """
        Every labelled graph on n vertices with independence number exactly two.

        The complement is built edge by edge, excluding before including, and a
        pair is only included when it closes no triangle. With dedup, one graph
        per isomorphism class is yielded instead, from triangle_free_classes.

        Raises:
            TooLargeError: Above ENUMERATION_MAX_N, or above DEDUP_MAX_N with dedup
        """
        limit = self.settings.DEDUP_MAX_N if dedup else self.settings.ENUMERATION_MAX_N
        if n > limit:
            raise TooLargeError(
                f"Enumeration is limited to {limit} vertices, got {n}",
                details={"n": n, "limit": limit, "dedup": dedup},
            )
        if dedup:
            for h in self.triangle_free_classes(n):
                if h.edge_count:
                    yield self.graph_service.complement(h)
            return

        pairs = [(u, v) for v in range(1, n) for u in range(v)]
        rows = [0] * n

        def extend(index: int) -> Iterator[Graph]:
            if index == len(pairs):
                if any(rows):
                    yield self.graph_service.complement(Graph(n, tuple(rows)))
                return
            yield from extend(index + 1)
            u, v = pairs[index]
            if not rows[u] & rows[v]:
                rows[u] |= 1 << v
                rows[v] |= 1 << u
                yield from extend(index + 1)
                rows[u] &= ~(1 << v)
                rows[v] &= ~(1 << u)

        yield from extend(0)

    def triangle_free_classes(self, n: int) -> list[Graph]:
        """
        One triangle-free graph per isomorphism class on n vertices.

        Built one vertex at a time: every class on k + 1 vertices arises from one
        on k vertices plus a vertex whose neighbourhood is independent.
        """
        if n <= 0:
            return [Graph(0, ())]
        level = [Graph(1, (0,))]
        for k in range(1, n):
            found: dict[bytes, Graph] = {}
            for h in level:
                for neighbourhood in _independent_masks(h):
                    rows = [row | (neighbourhood >> u & 1) << k for u, row in enumerate(h.rows)]
                    grown = Graph(k + 1, (*rows, neighbourhood))
                    found.setdefault(self.canonical_form(grown), grown)
            level = list(found.values())
            logger.debug(f"{len(level)} triangle-free classes on {k + 1} vertices")
        return level

    def canonical_form(self, g: Graph) -> bytes:
        """
        Lexicographically least upper-triangle adjacency string over all relabellings.

        Labellings are grown one position at a time, keeping only those whose
        columns so far are least; of several twin vertices only one is tried.

        Raises:
            TooLargeError: Above DEDUP_MAX_N
        """
        self.ensure_size(g, self.settings.DEDUP_MAX_N, operation="canonical_form")
        twin = _twin_representatives(g)
        partials: list[tuple[int, ...]] = [(v,) for v in range(g.n) if twin[v] == v]
        columns: list[tuple[int, int]] = []
        for k in range(1, g.n):
            best = -1
            survivors: list[tuple[int, ...]] = []
            for placed in partials:
                tried: set[int] = set()
                for w in range(g.n):
                    if w in placed or twin[w] in tried:
                        continue
                    tried.add(twin[w])
                    column = 0
                    for p in placed:
                        column = column << 1 | (g.rows[w] >> p & 1)
                    if best < 0 or column < best:
                        best, survivors = column, [(*placed, w)]
                    elif column == best:
                        survivors.append((*placed, w))
            columns.append((best, k))
            partials = survivors
        return bytes(column >> (k - 1 - i) & 1 for column, k in columns for i in range(k))

    def random_alpha2(self, n: int, seed: int) -> Graph:
        """
        A graph whose complement is a thinned random maximal triangle-free graph.

        Deterministic per (n, seed). The complement keeps at least one edge
        whenever n >= 2, so the result then has independence number two.

        Raises:
            TooLargeError: Above MAX_N
        """
        self.ensure_order(n, operation="random_alpha2")
        rng = random.Random(seed)
        pairs = [(u, v) for v in range(1, n) for u in range(v)]
        rng.shuffle(pairs)
        rows = [0] * n
        for u, v in pairs:
            if not rows[u] & rows[v]:
                rows[u] |= 1 << v
                rows[v] |= 1 << u

        kept = sorted((u, v) for u, v in pairs if rows[u] >> v & 1)
        remaining = len(kept)
        for u, v in kept:
            if remaining > 1 and rng.random() < self.settings.RANDOM_THINNING:
                rows[u] &= ~(1 << v)
                rows[v] &= ~(1 << u)
                remaining -= 1
        return self.graph_service.complement(Graph(n, tuple(rows)))

    def example1(self, s: int, t: int) -> Graph:
        """
        K_{s+t-4} joined with C5: chi = s + t - 1, omega = s + t - 2, not (s, t+1)-splittable.

        Raises:
            BadParametersError: Unless t >= s >= 2
        """
        if not t >= s >= 2:
            raise BadParametersError(f"Need t >= s >= 2, got s={s}, t={t}")
        return join(complete_graph(s + t - 4), cycle_graph(5))

    def example2(self, s: int, t: int) -> Graph:
        """
        K_{s+t-7} joined with two copies of C5.

        Raises:
            BadParametersError: Unless t >= s >= 2 and s + t >= 7
        """
        if not t >= s >= 2 or s + t < 7:
            raise BadParametersError(f"Need t >= s >= 2 and s + t >= 7, got s={s}, t={t}")
        return join(complete_graph(s + t - 7), cycle_graph(5), cycle_graph(5))

    def sweep(
        self,
        n_max: int,
        mode: SweepMode = "exhaustive",
        budget: int | None = None,
        seed: int = 0,
        n_min: int = 2,
        workers: int | None = None,
        dedup: bool = False,
    ) -> SweepReport:
        """
        Split every hypothesis instance of a generated family.

        Exhaustive mode walks enumerate_alpha2 for each order in n_min..n_max,
        stopping after ``budget`` graphs when one is given. Random mode draws
        ``budget`` graphs (default 100) with orders and seeds taken from one
        generator seeded by ``seed``.

        Raises:
            BadParametersError: If the order range is empty or the mode unknown
            TooLargeError: If exhaustive mode is asked for above EXHAUSTIVE_SWEEP_MAX_N
        """
        if n_min < 1 or n_max < n_min:
            raise BadParametersError(f"Empty order range {n_min}..{n_max}")

        if mode == "exhaustive":
            if n_max > self.settings.EXHAUSTIVE_SWEEP_MAX_N:
                raise TooLargeError(
                    f"Exhaustive sweeps are limited to n <= {self.settings.EXHAUSTIVE_SWEEP_MAX_N}",
                    details={"n_max": n_max},
                )
            graphs: Iterable[Graph] = (
                g for n in range(n_min, n_max + 1) for g in self.enumerate_alpha2(n, dedup)
            )
            if budget is not None:
                graphs = islice(graphs, budget)
        elif mode == "random":
            graphs = self._random_stream(n_min, n_max, budget or DEFAULT_RANDOM_BUDGET, seed)
        else:
            raise BadParametersError(f"Unknown sweep mode {mode!r}")

        return self.sweep_graphs(graphs, mode=mode, n_min=n_min, n_max=n_max, workers=workers)

    def _random_stream(self, n_min: int, n_max: int, budget: int, seed: int) -> Iterator[Graph]:
        rng = random.Random(seed)
        for _ in range(budget):
            n = rng.randint(n_min, n_max)
            yield self.random_alpha2(n, rng.getrandbits(32))

    def sweep_graphs(
        self,
        graphs: Iterable[Graph],
        mode: SweepMode = "explicit",
        n_min: int | None = None,
        n_max: int | None = None,
        workers: int | None = None,
    ) -> SweepReport:
        """
        Sweep core over an explicit family.

        Graphs are consumed in batches of SWEEP_BATCH_SIZE; with more than one
        worker the batches run in a process pool and their reports are merged
        in submission order, with at most IN_FLIGHT_PER_WORKER batches per worker
        queued at once.
        """
        workers = workers or self.settings.SWEEP_WORKERS
        orders: list[int] = []

        def observed() -> Iterator[Graph]:
            for g in graphs:
                if not orders:
                    orders.extend((g.n, g.n))
                orders[0], orders[1] = min(orders[0], g.n), max(orders[1], g.n)
                yield g

        batches = _batches(observed(), self.settings.SWEEP_BATCH_SIZE)
        report = SweepReport(n_min=n_min or 0, n_max=n_max or 0, mode=mode)
        started = time.perf_counter()

        with tqdm(
            unit="graph", file=sys.stderr, disable=not self.settings.SWEEP_PROGRESS
        ) as progress:
            if workers > 1:
                with ProcessPoolExecutor(max_workers=workers) as pool:
                    pending: deque[Future[SweepReport]] = deque()
                    for batch in batches:
                        pending.append(pool.submit(_sweep_batch, (self.settings, batch)))
                        if len(pending) >= IN_FLIGHT_PER_WORKER * workers:
                            self._merge(report, pending.popleft().result(), progress)
                    while pending:
                        self._merge(report, pending.popleft().result(), progress)
            else:
                for batch in batches:
                    self._merge(report, self._sweep_batch(batch), progress)

        if n_min is None and orders:
            report.n_min, report.n_max = orders
        report.wall_time = time.perf_counter() - started
        logger.info(
            f"Sweep ({mode}) checked {report.graphs_checked} graphs, "
            f"{report.hypothesis_instances} hypothesis instances, {len(report.failures)} failures"
        )
        return report

    @staticmethod
    def _merge(report: SweepReport, partial: SweepReport, progress: tqdm) -> None:
        report.merge(partial)
        progress.update(partial.graphs_checked)

    def _sweep_batch(self, graphs: list[Graph]) -> SweepReport:
        partial = SweepReport(n_min=0, n_max=0, mode="explicit")
        for g in graphs:
            self._sweep_graph(g, partial)
        return partial

    def _sweep_graph(self, g: Graph, report: SweepReport) -> None:
        report.graphs_checked += 1
        complement = self.graph_service.complement(g)
        if not complement.edge_count or not self.graph_service.is_triangle_free(complement):
            logger.debug(f"{g!r} does not have independence number two")
            return

        chi = self.chromatic_service.chi_value(g)
        omega = self.graph_service.clique_number(g)
        graph6 = self.graph_repository.serialize_graph6(g).decode("ascii")
        for s in range(2, chi):
            t = chi + 1 - s
            if t < s:
                break
            report.instance_count += 1
            if chi <= omega + 1:
                continue
            report.hypothesis_instances += 1
            reason = self._attempt(g, s, t, report)
            logger.debug(f"{graph6} s={s} t={t}: {reason}")
            if reason != CERTIFIED:
                report.failures.append(SweepFailure(graph6, s, t, reason))

    def _attempt(self, g: Graph, s: int, t: int, report: SweepReport | None = None) -> str:
        try:
            certificate = self.splitter.split(SplitRequest(g=g, s=s, t=t))
        except PotentialCounterexampleError:
            return str(FailureReason.POTENTIAL_COUNTEREXAMPLE)
        except TooLargeError:
            return str(FailureReason.TOO_LARGE)
        except BaseGraphError as e:
            logger.error(f"Split of {g!r} (s={s}, t={t}) failed: {e.message}")
            return str(FailureReason.VERIFICATION_FAILED)
        if report is not None:
            report.branch_histogram[str(certificate.trace.branch)] += 1
        return CERTIFIED

    def replay(self, failure: SweepFailure | FailureRecord) -> str:
        """Re-run split on a recorded failure; returns the new outcome."""
        g = self.graph_repository.parse_graph6(failure.graph6.encode("ascii"))
        return self._attempt(g, failure.s, failure.t)


def _batches(graphs: Iterable[Graph], size: int) -> Iterator[list[Graph]]:
    iterator = iter(graphs)
    while batch := list(islice(iterator, size)):
        yield batch


def _sweep_batch(job: tuple[Settings, list[Graph]]) -> SweepReport:
    settings, graphs = job
    return LabService(settings)._sweep_batch(graphs)


def _independent_masks(g: Graph) -> Iterator[int]:
    """Bitmask of every independent set of g, the empty set included."""

    def extend(v: int, chosen: int, blocked: int) -> Iterator[int]:
        if v == g.n:
            yield chosen
            return
        yield from extend(v + 1, chosen, blocked)
        if not blocked >> v & 1:
            yield from extend(v + 1, chosen | 1 << v, blocked | g.rows[v])

    yield from extend(0, 0, 0)


def _twin_representatives(g: Graph) -> list[int]:
    """Lowest vertex with the same neighbours as v, apart from each other."""
    twin = list(range(g.n))
    for v in range(g.n):
        for u in range(v):
            others = ~(1 << u | 1 << v)
            if twin[u] == u and g.rows[u] & others == g.rows[v] & others:
                twin[v] = u
                break
    return twin
