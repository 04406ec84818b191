"""Edge-list files, name-map sidecars and JSON reports."""

from __future__ import annotations

import hashlib
import json
import logging
import os
import tempfile
from pathlib import Path
from typing import Iterable

from . import __version__
from .graph import DirectedGraph, GraphError
from .verify import VerificationReport

log = logging.getLogger(__name__)

REPORT_SCHEMA = "fbd-report/1"


class EdgeListError(GraphError):
    def __init__(self, path, lineno: int, line: str, reason: str):
        super().__init__(f"{path}:{lineno}: {reason}: {line!r}")
        self.lineno = lineno


def parse_edge_lines(lines: Iterable[str], source="<input>") -> list[tuple[int, int]]:
    pairs = []
    for lineno, raw in enumerate(lines, 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split(",")
        if len(parts) != 2:
            raise EdgeListError(source, lineno, line, "expected 'u,v'")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise EdgeListError(source, lineno, line, "non-integer vertex id") from None
        if u < 0 or v < 0:
            raise EdgeListError(source, lineno, line, "negative vertex id")
        pairs.append((u, v))
    return pairs


def read_edge_list(path: str | Path, compact: bool = True) -> DirectedGraph:
    """Load ``u,v`` lines. Ids with gaps are compacted (order kept) with a warning."""
    path = Path(path)
    with path.open() as fh:
        pairs = parse_edge_lines(fh, path)
    ids = sorted({x for p in pairs for x in p})
    if compact and ids and ids[-1] + 1 != len(ids):
        log.warning("%s: %d distinct ids up to %d; compacting to 0..%d",
                    path, len(ids), ids[-1], len(ids) - 1)
        remap = {x: i for i, x in enumerate(ids)}
        return DirectedGraph(len(ids), frozenset((remap[u], remap[v]) for u, v in pairs))
    n = ids[-1] + 1 if ids else 0
    return DirectedGraph(n, frozenset(pairs))


def format_edge_list(g: DirectedGraph) -> str:
    return "".join(f"{u},{v}\n" for u, v in g.sorted_edges())


def _atomic_write(path: str | Path, text: str) -> None:
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_edge_list(path: str | Path, g: DirectedGraph) -> None:
    _atomic_write(path, format_edge_list(g))


def write_lines(path: str | Path, lines: Iterable[str]) -> None:
    _atomic_write(path, "".join(f"{line}\n" for line in lines))


def file_digest(path: str | Path) -> str:
    return "sha256:" + hashlib.sha256(Path(path).read_bytes()).hexdigest()


def report_document(report: VerificationReport, digest: str | None = None) -> dict:
    doc = {"schema": REPORT_SCHEMA, "tool_version": __version__, "input_digest": digest}
    doc.update(report.as_dict())
    return doc


def write_report(path: str | Path, report: VerificationReport, digest: str | None = None) -> None:
    _atomic_write(path, json.dumps(report_document(report, digest), indent=2, sort_keys=True) + "\n")
