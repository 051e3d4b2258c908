"""
Dataset serialization.

CSV: one header row with the dataset's column names, then one row per
sample. Floats are written in positional decimal notation with 12
significant digits; integers as integers; lines end with ``\\n``.

JSON::

    {
      "metadata": {...},            # config echo, convention, version, notes
      "columns": ["t", "gt", ...],
      "rows": [{"t": 0.0, "gt": 0.0, ...}, ...]
    }

Output depends only on the dataset, so identical configs give
byte-identical files.
"""
from __future__ import annotations

import csv
import io
import json
import sys
from pathlib import Path
from typing import Literal, Optional, Union

import numpy as np

from .experiments import Dataset

Format = Literal["csv", "json"]


def format_number(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return str(int(x))
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    x = float(x) + 0.0  # folds -0.0 into 0.0
    if x == 0.0:
        return "0"
    return np.format_float_positional(x, precision=12, unique=False, fractional=False, trim="-")


def _plain(x):
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.floating):
        return float(x)
    return x


def render(dataset: Dataset, fmt: Format) -> str:
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(dataset.columns)
        for row in dataset.rows:
            writer.writerow([format_number(v) for v in row])
        return buf.getvalue()
    if fmt == "json":
        doc = {
            "metadata": dataset.metadata,
            "columns": list(dataset.columns),
            "rows": [{k: _plain(v) for k, v in zip(dataset.columns, row)} for row in dataset.rows],
        }
        return json.dumps(doc, indent=2, allow_nan=False) + "\n"
    raise ValueError(f"unknown format {fmt!r}; use csv or json")


def emit(dataset: Dataset, fmt: Format, path: Optional[Union[str, Path]]) -> Optional[Path]:
    """Write ``dataset`` to ``path`` (``None`` or ``"-"`` means stdout)."""
    text = render(dataset, fmt)
    if path is None or str(path) == "-":
        sys.stdout.write(text)
        return None
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write dataset to {path}: {exc.strerror or exc}") from exc
    return path


def load_dataset(path: Union[str, Path]) -> Dataset:
    """Read back a file written by :func:`emit`; CSV values come back as floats."""
    path = Path(path)
    text = path.read_text()
    if path.suffix == ".json":
        doc = json.loads(text)
        cols = tuple(doc["columns"])
        rows = [tuple(r[c] for c in cols) for r in doc["rows"]]
        return Dataset(doc["metadata"], cols, rows)
    reader = csv.reader(io.StringIO(text))
    cols = tuple(next(reader))
    return Dataset({}, cols, [tuple(float(v) for v in r) for r in reader])
