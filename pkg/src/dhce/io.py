"""File formats and persistence: manifests, matrices, reports, projections.

All writers go through an atomic temp-file + rename so a failed run never
leaves a partial artifact. Text output uses LF and UTF-8; floats are
written with six decimal digits, which round-trips the test fixtures.
"""

from __future__ import annotations

import csv
import io as _io
import json
import os
import tempfile
from pathlib import Path
from typing import Sequence, Tuple

import numpy as np

from .embedding import EmbeddingMatrix
from .errors import DataError, ParseError
from .evaluation import EvalReport
from .graph import Graph, parse_edge_list
from .projection import Projection2D

__all__ = [
    "atomic_write_text",
    "read_manifest",
    "write_manifest",
    "load_graph_file",
    "write_matrix_csv",
    "read_matrix_csv",
    "write_report_json",
    "write_per_run_csv",
    "write_projection_csv",
]

FLOAT_FMT = "{:.6f}"


def atomic_write_text(path: Path, text: str) -> None:
    """Write text to ``path`` via a temp file in the same directory."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        umask = os.umask(0)
        os.umask(umask)
        os.fchmod(fd, 0o666 & ~umask)  # mkstemp defaults to 0600
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def read_manifest(path: Path) -> list[Tuple[Path, str, str]]:
    """Read a ``path,label`` manifest; paths resolve against its directory.

    Returns (resolved_path, path_as_written, label) per row; the raw path
    string doubles as the graph id in downstream artifacts.
    """
    path = Path(path)
    if not path.is_file():
        raise DataError(f"manifest not found: {path}")
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip() for h in header[:2]] != ["path", "label"]:
            raise DataError(f"manifest {path} must start with header 'path,label'")
        entries = []
        for row in reader:
            if not row or (len(row) == 1 and not row[0].strip()):
                continue
            if len(row) != 2:
                raise DataError(f"manifest {path}: bad row {row!r}")
            entries.append((path.parent / row[0], row[0], row[1]))
    return entries


def write_manifest(path: Path, entries: Sequence[Tuple[str, str]]) -> None:
    """Write relative-path/label rows under the standard header."""
    buf = _io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["path", "label"])
    writer.writerows(entries)
    atomic_write_text(Path(path), buf.getvalue())


def load_graph_file(path: Path) -> Tuple[Graph, Tuple[str, ...]]:
    """Parse one edge-list file, wrapping parse failures with the filename."""
    path = Path(path)
    if not path.is_file():
        raise DataError(f"graph file not found: {path}")
    try:
        with open(path, encoding="utf-8") as fh:
            return parse_edge_list(fh)
    except ParseError as exc:
        raise DataError(f"{path}: {exc}") from exc


def write_matrix_csv(path: Path, matrix: EmbeddingMatrix) -> None:
    buf = _io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["graph_id", "label"] + [f"e{i}" for i in range(matrix.width)])
    classes = matrix.class_labels or [""] * len(matrix.row_labels)
    for gid, label, row in zip(matrix.row_labels, classes, matrix.rows):
        writer.writerow([gid, label] + [FLOAT_FMT.format(v) for v in row])
    atomic_write_text(Path(path), buf.getvalue())


def read_matrix_csv(path: Path) -> EmbeddingMatrix:
    path = Path(path)
    if not path.is_file():
        raise DataError(f"embedding matrix not found: {path}")
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or header[:2] != ["graph_id", "label"]:
            raise DataError(f"{path} must start with header 'graph_id,label,e0,...'")
        width = len(header) - 2
        ids, labels, rows = [], [], []
        for row in reader:
            if not row:
                continue
            if len(row) != width + 2:
                raise DataError(f"{path}: row has {len(row)} fields, expected {width + 2}")
            ids.append(row[0])
            labels.append(row[1])
            try:
                rows.append([float(v) for v in row[2:]])
            except ValueError as exc:
                raise DataError(f"{path}: non-numeric entry in row {row[0]!r}") from exc
    if not rows:
        raise DataError(f"{path}: no data rows")
    class_labels = tuple(labels) if any(labels) else None
    return EmbeddingMatrix(np.array(rows, dtype=np.float64), tuple(ids), class_labels)


def write_report_json(path: Path, report: EvalReport) -> None:
    atomic_write_text(Path(path), json.dumps(report.to_dict()) + "\n")


def write_per_run_csv(path: Path, report: EvalReport) -> None:
    buf = _io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["run", "acc", "f1"])
    for i, (acc, f1) in enumerate(report.per_run_scores):
        writer.writerow([i, FLOAT_FMT.format(acc), FLOAT_FMT.format(f1)])
    atomic_write_text(Path(path), buf.getvalue())


def write_projection_csv(path: Path, projection: Projection2D) -> None:
    """Write pc1/pc2 coordinates plus a one-line variance-ratio sidecar.

    The sidecar lands next to the CSV as ``<name>.variance.json``.
    """
    path = Path(path)
    buf = _io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["graph_id", "label", "pc1", "pc2"])
    classes = projection.class_labels or [""] * len(projection.row_labels)
    for gid, label, (pc1, pc2) in zip(projection.row_labels, classes, projection.coords):
        writer.writerow([gid, label, FLOAT_FMT.format(pc1), FLOAT_FMT.format(pc2)])
    atomic_write_text(path, buf.getvalue())
    sidecar = path.with_name(path.name + ".variance.json")
    ratios = [round(r, 6) for r in projection.explained_variance_ratio]
    atomic_write_text(sidecar, json.dumps({"explained_variance_ratio": ratios}) + "\n")
