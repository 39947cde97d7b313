import sys
from collections.abc import Iterator
from pathlib import Path
from typing import Literal

from loguru import logger

from src.core.config import Settings, get_settings
from src.exceptions.graph_exceptions import MalformedInputError, TooLargeError
from src.models.graph_model import Graph

GraphFormat = Literal["graph6", "edgelist"]

GRAPH6_HEADER = b">>graph6<<"
_SMALL_N = 62
_MEDIUM_N = 258047


class GraphRepository:
    """graph6 and edge-list codecs plus file / stdin access."""

    def __init__(self, settings: Settings | None = None):
        self.settings = settings or get_settings()

    def _check_cap(self, n: int) -> None:
        if n > self.settings.MAX_N:
            raise TooLargeError(
                f"Graph has {n} vertices, the configured cap is {self.settings.MAX_N}",
                details={"n": n, "limit": self.settings.MAX_N},
            )

    def serialize_graph6(self, g: Graph) -> bytes:
        if g.n <= _SMALL_N:
            head = [g.n + 63]
        elif g.n <= _MEDIUM_N:
            head = [126] + [63 + (g.n >> shift & 63) for shift in (12, 6, 0)]
        else:
            head = [126, 126] + [63 + (g.n >> shift & 63) for shift in (30, 24, 18, 12, 6, 0)]

        body: list[int] = []
        chunk = width = 0
        for j in range(1, g.n):
            for i in range(j):
                chunk = chunk << 1 | g.has_edge(i, j)
                width += 1
                if width == 6:
                    body.append(chunk + 63)
                    chunk = width = 0
        if width:
            body.append((chunk << (6 - width)) + 63)
        return bytes(head + body)

    def parse_graph6(self, text: bytes) -> Graph:
        """
        Decode one graph6 string, with or without the >>graph6<< header.

        Raises:
            MalformedInputError: For bytes outside 63..126, a wrong length or nonzero padding
            TooLargeError: If the encoded order exceeds MAX_N
        """
        data = text.rstrip(b"\r\n")
        start = len(GRAPH6_HEADER) if data.startswith(GRAPH6_HEADER) else 0
        for offset in range(start, len(data)):
            if not 63 <= data[offset] <= 126:
                raise MalformedInputError(f"Byte {data[offset]} is not graph6", offset=offset)
        if start >= len(data):
            raise MalformedInputError("Empty graph6 string", offset=start)

        if data[start] != 126:
            n, pos = data[start] - 63, start + 1
        elif len(data) > start + 1 and data[start + 1] != 126:
            if len(data) < start + 4:
                raise MalformedInputError("Truncated vertex count", offset=len(data))
            n, pos = _six_bit_value(data[start + 1 : start + 4]), start + 4
        else:
            if len(data) < start + 8:
                raise MalformedInputError("Truncated vertex count", offset=len(data))
            n, pos = _six_bit_value(data[start + 2 : start + 8]), start + 8
        self._check_cap(n)

        pairs = n * (n - 1) // 2
        expected = (pairs + 5) // 6
        if len(data) - pos != expected:
            raise MalformedInputError(
                f"Expected {expected} edge bytes for n={n}, got {len(data) - pos}",
                offset=min(len(data), pos + expected),
            )

        rows = [0] * n
        bit = 0
        for j in range(1, n):
            for i in range(j):
                byte = data[pos + bit // 6] - 63
                if byte >> (5 - bit % 6) & 1:
                    rows[i] |= 1 << j
                    rows[j] |= 1 << i
                bit += 1
        if expected and (data[-1] - 63) & ((1 << (expected * 6 - pairs)) - 1):
            raise MalformedInputError("Nonzero padding bits", offset=len(data) - 1)
        return Graph(n, tuple(rows))

    def serialize_edgelist(self, g: Graph) -> str:
        lines = [f"{g.n} {g.edge_count}"]
        lines.extend(f"{u} {v}" for u, v in g.edges())
        return "\n".join(lines) + "\n"

    def parse_edgelist(self, text: str) -> Graph:
        """
        Decode "n m" followed by m lines "u v".

        Raises:
            MalformedInputError: With the 1-based line number as offset
            TooLargeError: If n exceeds MAX_N
        """
        lines = [(no, line.split()) for no, line in enumerate(text.splitlines(), 1) if line.strip()]
        if not lines:
            raise MalformedInputError("Empty edge list", offset=1)
        header_no, header = lines[0]
        try:
            n, m = (int(x) for x in header)
        except ValueError as e:
            raise MalformedInputError("Header must be 'n m'", offset=header_no) from e
        if n < 0 or m < 0:
            raise MalformedInputError("Header values must be nonnegative", offset=header_no)
        self._check_cap(n)
        if len(lines) - 1 != m:
            raise MalformedInputError(
                f"Header announces {m} edges, found {len(lines) - 1}", offset=header_no
            )

        seen: set[tuple[int, int]] = set()
        for no, fields in lines[1:]:
            try:
                u, v = (int(x) for x in fields)
            except ValueError as e:
                raise MalformedInputError("Edge line must be 'u v'", offset=no) from e
            if not (0 <= u < n and 0 <= v < n) or u == v:
                raise MalformedInputError(f"Invalid edge ({u}, {v}) for n={n}", offset=no)
            edge = (min(u, v), max(u, v))
            if edge in seen:
                raise MalformedInputError(f"Duplicate edge {edge}", offset=no)
            seen.add(edge)
        return Graph.from_edges(n, seen)

    def read_bytes(self, source: str | Path) -> bytes:
        if str(source) == "-":
            return sys.stdin.buffer.read()
        return Path(source).read_bytes()

    def read_graphs(self, source: str | Path, fmt: GraphFormat = "graph6") -> Iterator[Graph]:
        """Every graph in the source: one per graph6 line, or one edge-list document."""
        raw = self.read_bytes(source)
        if fmt == "edgelist":
            try:
                text = raw.decode("utf-8")
            except UnicodeDecodeError as e:
                raise MalformedInputError("Edge list is not valid UTF-8", offset=e.start) from e
            yield self.parse_edgelist(text)
            return
        count = 0
        for line in raw.splitlines():
            if line.strip():
                count += 1
                yield self.parse_graph6(line.strip())
        logger.debug(f"Read {count} graph6 graphs from {source}")


def _six_bit_value(chunk: bytes) -> int:
    value = 0
    for byte in chunk:
        value = value << 6 | (byte - 63)
    return value
