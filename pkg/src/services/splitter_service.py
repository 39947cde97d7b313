from collections.abc import Callable, Iterable, Mapping, Sequence
from itertools import combinations

from loguru import logger

from src.core.config import Settings
from src.exceptions.graph_exceptions import (
    AlphaTooLargeError,
    ConstructionExhaustedError,
    GuardFailedError,
    HypothesisViolationError,
    NotFoundError,
    PotentialCounterexampleError,
)
from src.models.graph_model import ComponentProfile, Graph, VertexSet, iter_bits, to_mask
from src.models.split_model import (
    Branch,
    Candidate,
    CaseTrace,
    HypothesisReport,
    SplitCertificate,
)
from src.repositories.graph_repository import GraphRepository
from src.repositories.report_repository import ReportRepository
from src.schema.split_schema import CertificateDocument, SplitRequest
from src.services.base_service import BaseService
from src.services.chromatic_service import ChromaticService
from src.services.graph_service import GraphService
from src.services.matching_service import MatchingService


class SplitterService(BaseService):
    """
    Builds (s, t+1) partitions of graphs with independence number two.

    Every construction of the case analysis becomes a candidate s-side. A
    candidate is only accepted once both sides have been recomputed with
    exact chromatic certificates; when every construction fails, an
    exhaustive search decides whether the instance is splittable at all.
    """

    def __init__(self, settings: Settings | None = None, reports: ReportRepository | None = None):
        super().__init__(settings)
        self.graph_service = GraphService(self.settings)
        self.matching_service = MatchingService(self.settings)
        self.chromatic_service = ChromaticService(self.settings)
        self.graph_repository = GraphRepository(self.settings)
        self.reports = reports or ReportRepository(self.settings)

    def check_hypotheses(self, req: SplitRequest) -> HypothesisReport:
        """
        alpha = 2, chi = s + t - 1 and chi > omega + 1.

        chi is left empty when alpha > 2 and the graph is too large for the
        exact colouring oracle.

        Raises:
            TooLargeError: If g exceeds MAX_N
        """
        g, s, t = req.g, req.s, req.t
        alpha = self.graph_service.independence_number(g)
        omega = self.graph_service.clique_number(g)
        if alpha <= 2:
            chi: int | None = self.chromatic_service.chi_value(g)
        elif g.n <= self.settings.ORACLE_MAX_N:
            chi = self.chromatic_service.chi_bruteforce(g)
        else:
            chi = None

        reasons = []
        if alpha != 2:
            reasons.append(f"alpha(G) = {alpha}, expected 2")
        if chi != s + t - 1:
            reasons.append(f"chi(G) = {chi}, expected s + t - 1 = {s + t - 1}")
        if chi is not None and chi <= omega + 1:
            reasons.append(f"chi(G) = {chi} is not above omega(G) + 1 = {omega + 1}")
        return HypothesisReport(
            alpha=alpha, omega=omega, chi=chi, holds=not reasons, reasons=tuple(reasons)
        )

    def split(self, req: SplitRequest) -> SplitCertificate:
        """
        A verified (s, t+1) partition of req.g.

        Raises:
            HypothesisViolationError: If the hypotheses do not hold
            TooLargeError: If the exhaustive fallback is needed above FALLBACK_MAX_N
            PotentialCounterexampleError: If no partition exists at all
        """
        g, s, t = req.g, req.s, req.t
        report = self.check_hypotheses(req)
        if not report.holds:
            raise HypothesisViolationError(
                "Splitting hypotheses do not hold",
                details={"reasons": list(report.reasons), "s": s, "t": t},
            )

        complement = self.graph_service.complement(g)
        p = self.matching_service.maximal_witness_set(complement).p
        attempts: list[CaseTrace] = []
        try:
            return self._run_cascade(g, s, t, p, report.omega, attempts)
        except ConstructionExhaustedError as e:
            logger.warning(f"{e.message} on {g!r} (s={s}, t={t}); running exhaustive fallback")

        found = self.splittable_bruteforce(g, s, t + 1)
        if found is not None:
            trace = CaseTrace(Branch.FALLBACK, {"P": p}, notes="exhaustive subset search")
            certificate = self.certify(g, found[0], s, t, trace)
            if certificate is not None and not self.verify(g, certificate, s, t):
                return certificate

        graph6 = self.graph_repository.serialize_graph6(g).decode("ascii")
        path = self.reports.dump_counterexample(graph6, s, t, attempts)
        raise PotentialCounterexampleError(
            f"No ({s}, {t + 1}) partition exists",
            graph6=graph6,
            s=s,
            t=t,
            details={"attempts": [str(trace.branch) for trace in attempts], "dump": str(path)},
        )

    def _run_cascade(
        self, g: Graph, s: int, t: int, p: VertexSet, omega: int, attempts: list[CaseTrace]
    ) -> SplitCertificate:
        if omega >= s:
            candidates: list[Candidate] = []
            for construct in (self.construct_case1_pairs, self.construct_case1_ramsey):
                try:
                    candidates.append(construct(g, s, t, p))
                except GuardFailedError as e:
                    logger.debug(f"{construct.__name__}: {e.message}")
        else:
            candidates = self.construct_case2(g, s, t, p)

        for candidate in candidates:
            attempts.append(candidate.trace)
            certificate = self.certify(g, candidate.s_side, s, t, candidate.trace)
            if certificate is None:
                continue
            violations = self.verify(g, certificate, s, t)
            if violations:
                logger.error(f"Certificate from {candidate.trace.branch} failed: {violations}")
                continue
            logger.info(f"Split {g!r} with s={s}, t={t} via {candidate.trace.branch}")
            return certificate

        raise ConstructionExhaustedError(
            f"All {len(candidates)} constructions failed verification",
            details={"branches": [str(c.trace.branch) for c in candidates]},
        )

    def construct_case1_pairs(self, g: Graph, s: int, t: int, p: Iterable[int]) -> Candidate:
        """
        Two non-adjacent pairs of the complement from two distinct non-singleton
        components of (complement - P), plus one vertex from each of s - 4 further
        components. For s < 4 the construction is truncated to a pair and a
        single (s = 3) or a single pair (s = 2).

        Raises:
            GuardFailedError: If fewer than two non-singleton components exist,
                or there are not enough further components
        """
        p = frozenset(p)
        complement = self.graph_service.complement(g)
        profile = self.graph_service.components(complement, removed=p)
        large = [c for c in profile.components if len(c) > 1]
        if len(large) < 2:
            raise GuardFailedError(
                f"Need two non-singleton components, found {len(large)}",
                details={"histogram": profile.histogram},
            )

        first, second = large[0], large[1]
        x1, y1 = _lowest_non_adjacent_pair(complement, first)
        x2, y2 = _lowest_non_adjacent_pair(complement, second)
        markers = {"x1": x1, "y1": y1}
        if s >= 4:
            pairs = {x1, y1, x2, y2}
            markers |= {"x2": x2, "y2": y2}
            singles = _one_per_component(profile, exclude=(first, second), count=s - 4)
        elif s == 3:
            pairs = {x1, y1}
            singles = _one_per_component(profile, exclude=(first,), count=1)
        else:
            pairs = {x1, y1}
            singles = frozenset()

        trace = CaseTrace(
            Branch.CASE1_SUB1,
            {"P": p, "pairs": frozenset(pairs), "singles": singles},
            markers=markers,
            notes="" if s >= 4 else f"truncated construction for s={s}",
        )
        return Candidate(frozenset(pairs) | singles, trace)

    def construct_case1_ramsey(self, g: Graph, s: int, t: int, p: Iterable[int]) -> Candidate:
        """
        An independent 4-set of the complement inside its only non-singleton
        component H (|H| >= 9), plus one vertex from each of s - 4 other
        components. For s < 4 the independent set is cut down to s vertices.

        Raises:
            GuardFailedError: If the component structure does not match, or the
                component holds no independent 4-set
        """
        p = frozenset(p)
        complement = self.graph_service.complement(g)
        profile = self.graph_service.components(complement, removed=p)
        large = [c for c in profile.components if len(c) > 1]
        if len(large) != 1 or len(large[0]) < 9:
            raise GuardFailedError(
                "Need exactly one non-singleton component with at least 9 vertices",
                details={"histogram": profile.histogram},
            )

        h0 = large[0]
        induced = self.graph_service.induced(complement, h0)
        try:
            independent = induced.lift(self.graph_service.find_independent_set(induced.graph, 4))
        except NotFoundError as e:
            raise GuardFailedError(e.message, details=e.details) from e

        x = frozenset(sorted(independent)[: min(s, 4)])
        singles = _one_per_component(profile, exclude=(h0,), count=max(0, s - 4))
        trace = CaseTrace(
            Branch.CASE1_SUB2,
            {"P": p, "H0": h0, "X": x, "singles": singles},
            markers={f"x{i}": v for i, v in enumerate(sorted(independent), 1)},
        )
        return Candidate(x | singles, trace)

    def construct_case2(self, g: Graph, s: int, t: int, p: Iterable[int]) -> list[Candidate]:
        """
        Candidates for omega(G) < s, in the order the case analysis builds them.

        The preliminary set always comes first. With |P| in {1, 2} it is
        followed by the F-based set; with P empty by the F'-based set and then
        the U1/U2/Y set. A stage whose guard fails is skipped.
        """
        p = frozenset(p)
        complement = self.graph_service.complement(g)
        profile = self.graph_service.components(complement, removed=p)

        stages: list[Callable[[], Candidate]] = [
            lambda: self._case2_preliminary(s, p, profile)
        ]
        if len(p) in (1, 2):
            stages.append(lambda: self._case2_sub1(complement, s, p, profile))
        elif not p:
            stages.append(lambda: self._case2_contra(complement, s, p, profile))
            stages.append(lambda: self._case2_main(complement, s, p, profile))

        candidates = []
        for stage in stages:
            try:
                candidates.append(stage())
            except GuardFailedError as e:
                logger.debug(f"Case 2 stage skipped: {e.message}")
        return candidates

    def _case2_preliminary(self, s: int, p: VertexSet, profile: ComponentProfile) -> Candidate:
        size = 2 * (s - (len(p) + 1) // 2)
        chosen = _take_pairs(profile.components, frozenset(), size)
        trace = CaseTrace(Branch.CASE2_PRELIM, {"P": p, "S'": chosen})
        return Candidate(chosen | p, trace)

    def _find_h0(
        self, complement: Graph, profile: ComponentProfile
    ) -> tuple[VertexSet, tuple[int, int, int, int]]:
        """First component holding an independent 4-set, with that set in ascending order."""
        for component in profile.components:
            if len(component) < 4:
                continue
            induced = self.graph_service.induced(complement, component)
            try:
                found = self.graph_service.find_independent_set(induced.graph, 4)
            except NotFoundError:
                continue
            x, y, z, w = sorted(induced.lift(found))
            return component, (x, y, z, w)
        raise GuardFailedError("No component has an independent 4-set")

    def _case2_sub1(
        self, complement: Graph, s: int, p: VertexSet, profile: ComponentProfile
    ) -> Candidate:
        h0, (x, y, z, w) = self._find_h0(complement, profile)
        x_set = _representatives(profile, h0) | {x, y, z}
        f = frozenset(iter_bits((complement.rows[x] | complement.rows[y]) & ~to_mask(p)))
        l0 = h0 - f - {x, y, z}
        target = 2 * s - 2

        chosen = set(f)
        markers = {"x": x, "y": y, "z": z, "w_indep": w}
        if len(f) % 2:
            if not l0:
                raise GuardFailedError("F is odd and L0 is empty")
            markers["w_patch"] = min(l0)
            chosen.add(min(l0))
        if len(chosen) > target:
            raise GuardFailedError(f"F already holds {len(chosen)} > {target} vertices")

        rest = self.graph_service.components(complement, removed=p | x_set)
        pairs = _take_pairs(rest.components, frozenset(chosen), target - len(chosen))
        s_prime = frozenset(chosen) | pairs
        trace = CaseTrace(
            Branch.CASE2_SUB1,
            {"P": p, "S'": s_prime, "F": f, "H0": h0, "X": x_set, "L0": l0, "pairs": pairs},
            markers=markers,
        )
        return Candidate(s_prime | p, trace)

    def _case2_contra(
        self, complement: Graph, s: int, p: VertexSet, profile: ComponentProfile
    ) -> Candidate:
        h0, (x, y, z, w) = self._find_h0(complement, profile)
        x_set = _representatives(profile, h0) | {x, y, z}
        f_prime = frozenset(
            iter_bits(complement.rows[x] | complement.rows[y] | complement.rows[z])
        )
        l0 = h0 - f_prime - {x, y, z}
        target = 2 * s - 1

        chosen = set(f_prime)
        markers = {"x": x, "y": y, "z": z, "w_indep": w}
        if len(f_prime) % 2 == 0:
            if not l0:
                raise GuardFailedError("F' is even and L0 is empty")
            markers["w_patch"] = min(l0)
            chosen.add(min(l0))
        if len(chosen) > target:
            raise GuardFailedError(f"F' already holds {len(chosen)} > {target} vertices")

        rest = self.graph_service.components(complement, removed=x_set)
        pairs = _take_pairs(rest.components, frozenset(chosen), target - len(chosen))
        s_side = frozenset(chosen) | pairs
        trace = CaseTrace(
            Branch.CASE2_SUB2_CONTRA,
            {"P": p, "S'": s_side, "F'": f_prime, "H0": h0, "X": x_set, "L0": l0, "pairs": pairs},
            markers=markers,
        )
        return Candidate(s_side, trace)

    def _case2_main(
        self, complement: Graph, s: int, p: VertexSet, profile: ComponentProfile
    ) -> Candidate:
        h0, (x, y, z, w) = self._find_h0(complement, profile)
        rows = complement.rows
        nx = rows[x]
        private = [u for u in iter_bits(nx) if not (rows[y] | rows[z]) >> u & 1]
        if len(private) < 2:
            raise GuardFailedError(
                f"Only {len(private)} neighbours of x avoid N(y) and N(z)",
                details={"private": private},
            )
        u1, u2 = private[0], private[1]

        u1_set = frozenset(iter_bits(1 << x | nx | rows[u1] | rows[u2]))
        u2_set = _representatives(profile, h0)
        y_set = u1_set | u2_set
        l0 = h0 - y_set
        target = 2 * s - 3 - nx.bit_count()

        chosen: set[int] = set()
        markers = {"x": x, "y": y, "z": z, "w_indep": w, "u1": u1, "u2": u2}
        if nx.bit_count() % 2 == 0:
            if not l0:
                raise GuardFailedError("N(x) is even and L0 is empty")
            markers["y_patch"] = min(l0)
            chosen.add(min(l0))
        if target < len(chosen):
            raise GuardFailedError(f"N(x) is too large for a side of {2 * s - 3} vertices")

        rest = self.graph_service.components(complement, removed=y_set)
        pairs = _take_pairs(rest.components, frozenset(chosen), target - len(chosen))
        s_prime = frozenset(chosen) | pairs
        trace = CaseTrace(
            Branch.CASE2_SUB2_MAIN,
            {
                "P": p,
                "S'": s_prime,
                "H0": h0,
                "U1": u1_set,
                "U2": u2_set,
                "Y": y_set,
                "L0": l0,
                "pairs": pairs,
            },
            markers=markers,
        )
        return Candidate(s_prime | frozenset(iter_bits(nx)), trace)

    def certify(
        self, g: Graph, s_side: Iterable[int], s: int, t: int, trace: CaseTrace
    ) -> SplitCertificate | None:
        """Both sides recomputed with chi_alpha2; None when a bound is missed."""
        s_side = frozenset(s_side)
        t_side = frozenset(range(g.n)) - s_side
        s_evidence = self.chromatic_service.chi_alpha2(self.graph_service.induced(g, s_side).graph)
        t_evidence = self.chromatic_service.chi_alpha2(self.graph_service.induced(g, t_side).graph)
        if s_evidence.chi < s or t_evidence.chi < t + 1:
            logger.debug(
                f"{trace.branch} rejected: chi(S) = {s_evidence.chi}, chi(T) = {t_evidence.chi}"
            )
            return None
        return SplitCertificate(
            s=s,
            t=t,
            s_side=s_side,
            t_side=t_side,
            s_evidence=s_evidence,
            t_evidence=t_evidence,
            trace=trace,
        )

    def verify(self, g: Graph, certificate: SplitCertificate, s: int, t: int) -> list[str]:
        """Violated clauses of a certificate; an empty list means it verifies."""
        violations = []
        if (certificate.s, certificate.t) != (s, t):
            violations.append(
                f"parameters: certificate is for ({certificate.s}, {certificate.t}), not ({s}, {t})"
            )
        violations += self._violations(
            g,
            certificate.s_side,
            certificate.t_side,
            s,
            t,
            s_chi=certificate.s_evidence.chi,
            t_chi=certificate.t_evidence.chi,
            named_sets=certificate.trace.named_sets,
        )
        return violations

    def verify_document(self, g: Graph, document: CertificateDocument) -> list[str]:
        return self._violations(
            g,
            frozenset(document.s_side),
            frozenset(document.t_side),
            document.s,
            document.t,
            s_chi=document.s_chi,
            t_chi=document.t_chi,
            named_sets={role: frozenset(v) for role, v in document.named_sets.items()},
        )

    def _violations(
        self,
        g: Graph,
        s_side: VertexSet,
        t_side: VertexSet,
        s: int,
        t: int,
        s_chi: int,
        t_chi: int,
        named_sets: Mapping[str, VertexSet],
    ) -> list[str]:
        vertices = frozenset(range(g.n))
        if s_side & t_side or s_side | t_side != vertices:
            return ["partition: s_side and t_side do not partition V(G)"]

        violations = []
        for role, members in sorted(named_sets.items()):
            if not members <= vertices:
                violations.append(f"named_sets: {role} leaves V(G)")

        for side, members, recorded, bound in (
            ("s", s_side, s_chi, s),
            ("t", t_side, t_chi, t + 1),
        ):
            try:
                actual = self.chromatic_service.chi_value(self.graph_service.induced(g, members).graph)
            except AlphaTooLargeError:
                violations.append(f"{side}_side: independence number exceeds 2")
                continue
            if actual != recorded:
                violations.append(f"{side}_chi: recorded {recorded}, recomputed {actual}")
            if actual < bound:
                violations.append(f"{side}_chi: chi(G[{side.upper()}]) = {actual} < {bound}")
        return violations

    def splittable_bruteforce(
        self, g: Graph, a: int, b: int
    ) -> tuple[VertexSet, VertexSet] | None:
        """
        Some partition (S, T) with chi(G[S]) >= a and chi(G[T]) >= b, or None.

        Subsets are tried by increasing size, lexicographically within a size.
        When a == b a partition and its swap are the same answer, so only the
        smaller side (holding vertex 0 on a tie) is enumerated.

        Raises:
            TooLargeError: If g exceeds FALLBACK_MAX_N
            AlphaTooLargeError: If alpha(G) >= 3
        """
        self.ensure_size(g, self.settings.FALLBACK_MAX_N, operation="splittable_bruteforce")
        if not self.graph_service.is_triangle_free(self.graph_service.complement(g)):
            raise AlphaTooLargeError("Graph has independence number at least 3")

        n = g.n
        everything = frozenset(range(n))
        largest = n - b
        if a == b:
            largest = min(largest, n // 2)

        for k in range(max(a, 0), largest + 1):
            for combo in combinations(range(n), k):
                if a == b and 2 * k == n and combo[0] != 0:
                    break
                s_side = frozenset(combo)
                if self._chi(g, s_side) < a:
                    continue
                t_side = everything - s_side
                if self._chi(g, t_side) >= b:
                    return s_side, t_side
        return None

    def _chi(self, g: Graph, members: VertexSet) -> int:
        return self.chromatic_service.chi_value(self.graph_service.induced(g, members).graph)


def _lowest_non_adjacent_pair(complement: Graph, component: VertexSet) -> tuple[int, int]:
    members = sorted(component)
    for i, u in enumerate(members):
        for v in members[i + 1 :]:
            if not complement.has_edge(u, v):
                return u, v
    raise GuardFailedError(f"Component {members} is a clique of the complement")


def _one_per_component(
    profile: ComponentProfile, exclude: Sequence[VertexSet], count: int
) -> VertexSet:
    """Lowest vertex of each of the first ``count`` components not excluded."""
    if count <= 0:
        return frozenset()
    picked = [min(c) for c in profile.components if c not in exclude][:count]
    if len(picked) < count:
        raise GuardFailedError(
            f"Need {count} further components, found {len(picked)}",
            details={"histogram": profile.histogram},
        )
    return frozenset(picked)


def _representatives(profile: ComponentProfile, h0: VertexSet) -> VertexSet:
    return frozenset(min(c) for c in profile.components if c != h0)


def _take_pairs(components: Iterable[VertexSet], used: VertexSet, needed: int) -> VertexSet:
    """
    ``needed`` vertices taken two at a time from inside single components,
    skipping vertices already used.

    Raises:
        GuardFailedError: If the components run out of pairs
    """
    if needed % 2:
        raise GuardFailedError(f"Cannot fill an odd number ({needed}) of vertices with pairs")
    taken: list[int] = []
    for component in components:
        if len(taken) == needed:
            break
        available = sorted(component - used)
        room = min(len(available) // 2 * 2, needed - len(taken))
        taken.extend(available[:room])
    if len(taken) < needed:
        raise GuardFailedError(f"Only {len(taken)} of {needed} paired vertices available")
    return frozenset(taken)


