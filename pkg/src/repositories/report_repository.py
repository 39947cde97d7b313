import hashlib
from collections.abc import Sequence
from pathlib import Path
from typing import TextIO

from loguru import logger
from pydantic import ValidationError

from src.core.config import Settings, get_settings
from src.models.split_model import CaseTrace
from src.models.sweep_model import SweepReport
from src.schema.report_schema import (
    CounterexampleDump,
    FailureLine,
    FailureRecord,
    SummaryLine,
    SweepSummary,
    TraceRecord,
)
from src.schema.split_schema import CertificateDocument


class ReportRepository:
    """Writes certificate documents, sweep reports and counterexample dumps."""

    def __init__(self, settings: Settings | None = None):
        self.settings = settings or get_settings()

    def write_certificate(self, document: CertificateDocument, stream: TextIO) -> None:
        stream.write(document.model_dump_json() + "\n")

    def read_certificate(self, raw: bytes) -> CertificateDocument:
        return CertificateDocument.model_validate_json(raw)

    def write_sweep(self, report: SweepReport, stream: TextIO) -> None:
        """One JSON line per failure, then a summary line."""
        for failure in report.failures:
            record = FailureRecord.model_validate(failure, from_attributes=True)
            stream.write(FailureLine(failure=record).model_dump_json() + "\n")
        summary = SweepSummary.from_report(report)
        stream.write(SummaryLine(summary=summary).model_dump_json() + "\n")

    def read_failures(self, lines: Sequence[str]) -> list[FailureRecord]:
        records = []
        for line in lines:
            try:
                records.append(FailureLine.model_validate_json(line).failure)
            except ValidationError:
                # summary line
                continue
        return records

    def dump_counterexample(
        self, graph6: str, s: int, t: int, traces: Sequence[CaseTrace]
    ) -> Path | None:
        """
        Persist an instance that contradicts the splitting theorem.

        Returns the dump path, or None when dumping is disabled.
        """
        if not self.settings.DUMP_COUNTEREXAMPLES:
            return None
        directory = Path(self.settings.REPORT_DIR)
        directory.mkdir(parents=True, exist_ok=True)
        digest = hashlib.sha1(graph6.encode("ascii")).hexdigest()[:16]
        path = directory / f"counterexample_{digest}_s{s}_t{t}.json"
        dump = CounterexampleDump(
            graph=graph6, s=s, t=t, attempts=[TraceRecord.from_trace(trace) for trace in traces]
        )
        path.write_text(dump.model_dump_json(indent=2) + "\n", encoding="utf-8")
        logger.error(f"Potential counterexample written to {path}")
        return path

    def read_counterexample(self, path: Path) -> CounterexampleDump:
        return CounterexampleDump.model_validate_json(path.read_bytes())
