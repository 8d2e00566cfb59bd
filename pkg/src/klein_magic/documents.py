"""Reading and writing labelings and path partitions.

Two encodings: a JSON document with metadata, and a bare CSV grid laid out
as m lines of n comma-separated labels.
"""

from __future__ import annotations

import csv
import io
import json
import re
from pathlib import Path
from typing import Any, Mapping

from klein_magic.grid import GridDims
from klein_magic.labeling import Labeling, LabelingError
from klein_magic.search_graph import PathPartition

__all__ = [
    "DocumentError",
    "dumps_json",
    "labeling_from_csv",
    "labeling_from_document",
    "labeling_to_csv",
    "labeling_to_document",
    "load_labeling",
    "load_partition",
    "partition_from_document",
    "partition_to_document",
]

LABELING_FORMAT = "klein-magic/labeling"
PARTITION_FORMAT = "klein-magic/partition"
VERSION = 1

_INT_LIST = re.compile(r"\[\s*(-?\d+(?:,\s*-?\d+)*)\s*\]")


class DocumentError(ValueError):
    """A file that cannot be read as a labeling or partition."""


def dumps_json(doc: Any) -> str:
    """Indented JSON with integer lists kept on one line; stable byte for byte."""
    text = json.dumps(doc, indent=2)
    return _INT_LIST.sub(lambda mt: "[" + ", ".join(v.strip() for v in mt.group(1).split(",")) + "]", text) + "\n"


def labeling_to_document(x: Labeling, metadata: Mapping[str, Any] | None = None) -> dict[str, Any]:
    doc: dict[str, Any] = {
        "format": LABELING_FORMAT,
        "version": VERSION,
        "m": x.dims.m,
        "n": x.dims.n,
        "rows": x.rows,
    }
    if metadata:
        doc["metadata"] = dict(metadata)
    return doc


def labeling_from_document(doc: Mapping[str, Any]) -> Labeling:
    try:
        m, n, rows = doc["m"], doc["n"], doc["rows"]
    except (KeyError, TypeError) as exc:
        raise DocumentError(f"labeling document lacks field {exc}") from None
    if len(rows) != m or any(len(r) != n for r in rows):
        raise LabelingError(f"rows do not form an {m} x {n} grid")
    return Labeling.from_rows(rows)


def labeling_to_csv(x: Labeling) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(x.rows)
    return buf.getvalue()


def labeling_from_csv(text: str) -> Labeling:
    try:
        rows = [[int(v) for v in row] for row in csv.reader(io.StringIO(text)) if row]
    except ValueError as exc:
        raise DocumentError(f"CSV grid holds a non-integer: {exc}") from None
    return Labeling.from_rows(rows)


def _read(path: str | Path) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise DocumentError(f"cannot read {path}: {exc.strerror}") from None


def _parse_json(text: str, path: str | Path) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{path} is not valid JSON: {exc}") from None


def load_labeling(path: str | Path) -> Labeling:
    """Read a labeling from a JSON document or a CSV grid, decided by content."""
    text = _read(path)
    if text.lstrip().startswith("{"):
        return labeling_from_document(_parse_json(text, path))
    return labeling_from_csv(text)


def partition_to_document(k: PathPartition) -> dict[str, Any]:
    return {
        "format": PARTITION_FORMAT,
        "version": VERSION,
        "m": k.dims.m,
        "n": k.dims.n,
        "seq": list(k.seq),
        "palindromic": k.is_palindromic,
        "paths": k.label_sequences,
    }


def partition_from_document(doc: Mapping[str, Any]) -> PathPartition:
    try:
        dims = GridDims(doc["m"], doc["n"])
        return PathPartition(dims, tuple(doc["seq"]), tuple(tuple(p) for p in doc["paths"]))
    except (KeyError, TypeError) as exc:
        raise DocumentError(f"partition document lacks field {exc}") from None


def load_partition(path: str | Path, index: int = 1) -> PathPartition:
    """Read a partition document, or the ``index``-th entry (1-based) of a listing."""
    doc = _parse_json(_read(path), path)
    if "partitions" in doc:
        entries = doc["partitions"]
        if not 1 <= index <= len(entries):
            raise DocumentError(f"{path} lists {len(entries)} partitions; index {index} is out of range")
        doc = {**doc, "paths": entries[index - 1]}
    return partition_from_document(doc)
