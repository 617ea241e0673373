"""CSV ingestion."""

from __future__ import annotations

import csv
import io
import sys
from pathlib import Path

import numpy as np

from .data import LabeledDataset, encode_labels
from .exceptions import CellParseError, ClassCountError, InputFileError, LabelColumnError


def _read_rows(path) -> list[list[str]]:
    if str(path) == "-":
        text = sys.stdin.read()
    else:
        p = Path(path)
        if not p.is_file():
            raise InputFileError(f"input file not found: {p}")
        try:
            text = p.read_text(encoding="utf-8-sig")
        except OSError as exc:
            raise InputFileError(f"cannot read {p}: {exc}") from exc
    return [row for row in csv.reader(io.StringIO(text)) if row]


def _resolve_label_column(label_column, header, width) -> int:
    if label_column is None:
        if header is not None and "label" in header:
            return header.index("label")
        return width - 1
    if isinstance(label_column, str) and not label_column.lstrip("-").isdigit():
        if header is None:
            raise LabelColumnError(f"label column {label_column!r} given by name but the file has no header")
        if label_column not in header:
            raise LabelColumnError(f"label column {label_column!r} not in header {header}")
        return header.index(label_column)
    idx = int(label_column)
    if not -width <= idx < width:
        raise LabelColumnError(f"label column index {idx} out of range for {width} columns")
    return idx % width


def load_csv(path, label_column=None, has_header: bool = True) -> LabeledDataset:
    """Read a numeric CSV with one label column.

    ``label_column`` is a header name or a zero-based index (negative
    counts from the end); by default the column named ``label`` or else
    the last one.  ``path="-"`` reads stdin.  Row numbers in errors are
    1-based file lines.
    """
    rows = _read_rows(path)
    header = None
    first_line = 1
    if has_header:
        if not rows:
            raise InputFileError(f"{path}: empty file")
        header = [h.strip() for h in rows[0]]
        rows = rows[1:]
        first_line = 2
    if not rows:
        raise InputFileError(f"{path}: no data rows")
    width = len(header) if header is not None else len(rows[0])
    lab = _resolve_label_column(label_column, header, width)
    feat_cols = [c for c in range(width) if c != lab]

    values = np.empty((len(rows), len(feat_cols)))
    raw_labels = []
    for r, row in enumerate(rows):
        line = r + first_line
        if len(row) != width:
            raise CellParseError(f"row {line}: expected {width} columns, found {len(row)}")
        for j, c in enumerate(feat_cols):
            cell = row[c].strip()
            try:
                values[r, j] = float(cell)
            except ValueError:
                raise CellParseError(f"row {line}, column {c + 1}: cannot parse {cell!r} as a number") from None
            if not np.isfinite(values[r, j]):
                raise CellParseError(f"row {line}, column {c + 1}: non-finite value {cell!r}")
        raw_labels.append(row[lab].strip())

    labels, names = encode_labels(raw_labels)
    if len(names) < 2:
        raise ClassCountError(f"{path}: need at least 2 classes, found {len(names)}")
    feature_names = tuple(header[c] for c in feat_cols) if header else None
    return LabeledDataset(values, labels, names, feature_names)


def write_csv(ds: LabeledDataset, stream) -> None:
    """Write ``ds`` with a header row and a trailing ``label`` column."""
    names = ds.feature_names or tuple(f"f{i}" for i in range(ds.n_features))
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow([*names, "label"])
    for row, lab in zip(ds.values, ds.labels):
        writer.writerow([repr(float(v)) for v in row] + [ds.class_names[lab]])
