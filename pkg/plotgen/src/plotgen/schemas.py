"""Strict readers for the degdiff CSV schemas.

Every figure input is validated against its documented column list before
anything is drawn: a renamed or missing column is a hard error naming the
column, and a header-only file is rejected rather than plotted empty.
"""

from __future__ import annotations

import csv
from pathlib import Path

__all__ = ["SchemaError", "read_table", "SCHEMAS"]

SCHEMAS = {
    "dd_dist": ["d", "probability"],
    "dd_dist_ensemble": ["d", "mean_probability", "std_probability"],
    "analytic_dd": ["d", "probability"],
    "percolate": ["fraction", "mean_lcc", "std_lcc"],
    "correlations_ensemble": ["measure_a", "measure_b", "kind", "mean",
                              "std", "defined_samples"],
    "mec_percentiles": ["measure", "percentile"],
    "stages": ["stage", "ga", "d", "probability"],
}

_TEXT_COLUMNS = {"measure_a", "measure_b", "kind", "measure"}


class SchemaError(ValueError):
    """Input file does not match the documented schema."""


def read_table(path, schema: str) -> dict[str, list]:
    """Read a CSV against a named schema; columns come back as lists.

    Numeric columns parse to float ('undefined' to None); text columns stay
    strings.
    """
    expected = SCHEMAS[schema]
    path = Path(path)
    with path.open(newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise SchemaError(f"{path}: empty file, expected header "
                              f"{expected}") from None
        if header != expected:
            missing = [c for c in expected if c not in header]
            extra = [c for c in header if c not in expected]
            offender = (missing or extra or ["<column order>"])[0]
            raise SchemaError(
                f"{path}: header {header} does not match schema "
                f"{expected!r} (offending column: {offender!r})")
        rows = list(reader)
    if not rows:
        raise SchemaError(f"{path}: no data rows under a valid header")
    out: dict[str, list] = {c: [] for c in expected}
    for i, row in enumerate(rows, start=2):
        if len(row) != len(expected):
            raise SchemaError(f"{path}:{i}: expected {len(expected)} cells, "
                              f"got {len(row)}")
        for col, cell in zip(expected, row):
            if col in _TEXT_COLUMNS:
                out[col].append(cell)
            elif cell == "undefined":
                out[col].append(None)
            else:
                try:
                    out[col].append(float(cell))
                except ValueError:
                    raise SchemaError(
                        f"{path}:{i}: column {col!r} has non-numeric "
                        f"value {cell!r}") from None
    return out
