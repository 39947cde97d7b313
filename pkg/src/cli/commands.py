import argparse
import sys
from collections.abc import Iterator
from contextlib import contextmanager
from pathlib import Path
from typing import TextIO

from loguru import logger
from pydantic import ValidationError

from src.core.config import Settings, get_settings
from src.core.logging import configure_logging
from src.exceptions.graph_exceptions import (
    BaseGraphError,
    CertificateError,
    PotentialCounterexampleError,
)
from src.repositories.graph_repository import GraphRepository
from src.repositories.report_repository import ReportRepository
from src.schema.graph_schema import CheckResponse, ChiResponse, DecompositionResponse
from src.schema.split_schema import CertificateDocument, SplitParameters, SplitRequest
from src.services.chromatic_service import ChromaticService
from src.services.graph_service import GraphService
from src.services.lab_service import LabService
from src.services.matching_service import MatchingService
from src.services.splitter_service import SplitterService

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


@contextmanager
def _output(path: Path | None) -> Iterator[TextIO]:
    if path is None:
        yield sys.stdout
        return
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8") as handle:
        yield handle


def _chi_command(args: argparse.Namespace, settings: Settings) -> int:
    graphs = GraphRepository(settings)
    graph_service = GraphService(settings)
    chromatic = ChromaticService(settings)
    with _output(args.out) as out:
        for g in graphs.read_graphs(args.input, args.format):
            alpha = graph_service.independence_number(g)
            if alpha <= 2:
                certificate = chromatic.chi_alpha2(g)
                chi, method = certificate.chi, "matching"
                witness = sorted(certificate.witness.p)
                odd: int | None = certificate.witness.odd_components
            else:
                chi, method = chromatic.chi_bruteforce(g), "bruteforce"
                witness, odd = None, None
            response = ChiResponse(
                graph=graphs.serialize_graph6(g).decode("ascii"),
                n=g.n,
                chi=chi,
                omega=graph_service.clique_number(g),
                alpha=alpha,
                method=method,
                witness=witness,
                odd_components=odd,
            )
            out.write(response.model_dump_json() + "\n")
    return EXIT_OK


def _split_command(args: argparse.Namespace, settings: Settings) -> int:
    parameters = SplitParameters(s=args.s, t=args.t)
    graphs = GraphRepository(settings)
    splitter = SplitterService(settings)
    reports = ReportRepository(settings)
    status = EXIT_OK
    with _output(args.out) as out:
        for g in graphs.read_graphs(args.input, args.format):
            request = SplitRequest(g=g, **parameters.model_dump())
            try:
                certificate = splitter.split(request)
            except PotentialCounterexampleError as e:
                logger.error(f"{e.graph6}: {e.message}")
                status = EXIT_FAILURE
                continue
            document = CertificateDocument.from_certificate(
                certificate, graphs.serialize_graph6(g).decode("ascii"), verified=True
            )
            reports.write_certificate(document, out)
    return status


def _check_command(args: argparse.Namespace, settings: Settings) -> int:
    graphs = GraphRepository(settings)
    splitter = SplitterService(settings)
    reports = ReportRepository(settings)
    raw = graphs.read_bytes(args.input)
    status = EXIT_OK
    with _output(args.out) as out:
        for number, line in enumerate(raw.splitlines(), 1):
            if not line.strip():
                continue
            try:
                document = reports.read_certificate(line)
            except ValidationError as e:
                raise CertificateError(
                    f"Line {number} is not a certificate document",
                    details={"errors": e.errors(include_url=False)},
                ) from e
            g = graphs.parse_graph6(document.graph.encode("ascii"))
            violations = splitter.verify_document(g, document)
            for violation in violations:
                logger.error(f"Certificate on line {number}: {violation}")
            if violations:
                status = EXIT_FAILURE
            response = CheckResponse(verified=not violations, violations=violations)
            out.write(response.model_dump_json() + "\n")
    return status


def _sweep_command(args: argparse.Namespace, settings: Settings) -> int:
    lab = LabService(settings)
    report = lab.sweep(
        n_max=args.n,
        mode=args.mode,
        budget=args.budget,
        seed=args.seed,
        n_min=args.n_min,
        workers=args.workers,
        dedup=args.dedup,
    )
    with _output(args.out) as out:
        ReportRepository(settings).write_sweep(report, out)
    return EXIT_OK if report.confirmed else EXIT_FAILURE


def _extremal_command(args: argparse.Namespace, settings: Settings) -> int:
    lab = LabService(settings)
    graphs = GraphRepository(settings)
    g = lab.example1(args.s, args.t) if args.example == 1 else lab.example2(args.s, args.t)
    with _output(args.out) as out:
        if args.format == "edgelist":
            out.write(graphs.serialize_edgelist(g))
        else:
            out.write(graphs.serialize_graph6(g).decode("ascii") + "\n")
    return EXIT_OK


def _decomp_command(args: argparse.Namespace, settings: Settings) -> int:
    graphs = GraphRepository(settings)
    graph_service = GraphService(settings)
    matching = MatchingService(settings)
    with _output(args.out) as out:
        for g in graphs.read_graphs(args.input, args.format):
            host = graph_service.complement(g) if args.complement else g
            decomposition = matching.gallai_edmonds(host)
            witness = matching.maximal_witness_set(host)
            response = DecompositionResponse(
                graph=graphs.serialize_graph6(g).decode("ascii"),
                complemented=args.complement,
                nu=matching.maximum_matching(host).nu,
                deficiency=matching.tutte_berge_deficiency(host),
                d=sorted(decomposition.d),
                a=sorted(decomposition.a),
                c=sorted(decomposition.c),
                witness=sorted(witness.p),
                odd_components=witness.odd_components,
                value=witness.value,
            )
            out.write(response.model_dump_json() + "\n")
    return EXIT_OK


def _enumerate_command(args: argparse.Namespace, settings: Settings) -> int:
    lab = LabService(settings)
    graphs = GraphRepository(settings)
    with _output(args.out) as out:
        for g in lab.enumerate_alpha2(args.n, dedup=args.dedup):
            out.write(graphs.serialize_graph6(g).decode("ascii") + "\n")
    return EXIT_OK


def _add_input_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("input", nargs="?", default="-", help="Input file, '-' for stdin")
    parser.add_argument("--format", choices=("graph6", "edgelist"), default="graph6")


def _add_out_arg(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--out", type=Path, default=None, help="Output file instead of stdout")


def _add_st_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--s", type=int, required=True)
    parser.add_argument("--t", type=int, required=True)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tihany",
        description="Split graphs with independence number two and verify the certificates.",
    )
    parser.add_argument("--log-level", default=None, help="Override TIHANY_LOG_LEVEL")
    subparsers = parser.add_subparsers(dest="command", required=True)

    chi = subparsers.add_parser("chi", help="Chromatic number, clique number and witness set")
    _add_input_args(chi)
    _add_out_arg(chi)
    chi.set_defaults(func=_chi_command)

    split = subparsers.add_parser("split", help="Build an (s, t+1) certificate")
    _add_input_args(split)
    _add_st_args(split)
    _add_out_arg(split)
    split.set_defaults(func=_split_command)

    check = subparsers.add_parser("check", help="Re-verify certificate documents")
    check.add_argument("input", nargs="?", default="-", help="Certificate file, '-' for stdin")
    _add_out_arg(check)
    check.set_defaults(func=_check_command)

    sweep = subparsers.add_parser("sweep", help="Verification sweep over generated graphs")
    sweep.add_argument("--n", type=int, required=True, help="Largest order")
    sweep.add_argument("--n-min", type=int, default=2)
    sweep.add_argument("--mode", choices=("exhaustive", "random"), default="exhaustive")
    sweep.add_argument("--budget", type=int, default=None)
    sweep.add_argument("--seed", type=int, default=0)
    sweep.add_argument("--workers", type=int, default=None)
    sweep.add_argument("--dedup", action="store_true")
    _add_out_arg(sweep)
    sweep.set_defaults(func=_sweep_command)

    extremal = subparsers.add_parser("extremal", help="Emit one of the two tightness examples")
    extremal.add_argument("--example", type=int, choices=(1, 2), required=True)
    _add_st_args(extremal)
    extremal.add_argument("--format", choices=("graph6", "edgelist"), default="graph6")
    _add_out_arg(extremal)
    extremal.set_defaults(func=_extremal_command)

    decomp = subparsers.add_parser("decomp", help="Gallai-Edmonds sets and maximal witness set")
    _add_input_args(decomp)
    decomp.add_argument("--complement", action="store_true", help="Decompose the complement")
    _add_out_arg(decomp)
    decomp.set_defaults(func=_decomp_command)

    enumerate_ = subparsers.add_parser("enumerate", help="Stream all graphs with alpha = 2")
    enumerate_.add_argument("--n", type=int, required=True)
    enumerate_.add_argument("--dedup", action="store_true")
    _add_out_arg(enumerate_)
    enumerate_.set_defaults(func=_enumerate_command)
    return parser


def run(argv: list[str] | None = None, settings: Settings | None = None) -> int:
    """
    Parse argv and run one verb.

    Exit codes: 0 success, 1 verification failure or potential counterexample,
    2 usage or input error.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    settings = settings or get_settings()
    if args.log_level:
        configure_logging(settings, log_level=args.log_level.upper())

    try:
        return int(args.func(args, settings))
    except PotentialCounterexampleError as e:
        logger.error(f"{e.graph6}: {e.message}")
        return EXIT_FAILURE
    except BaseGraphError as e:
        logger.error(f"{type(e).__name__}: {e.message}")
        return EXIT_USAGE
    except ValidationError as e:
        logger.error(f"Invalid parameters: {e.errors(include_url=False)}")
        return EXIT_USAGE
    except OSError as e:
        logger.error(f"Cannot read input: {e}")
        return EXIT_USAGE
