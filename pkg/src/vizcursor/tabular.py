"""Tabular data loading and field type inference.

Tables are immutable after load: every derived artifact (selections,
intervals, structures) may be shared freely across threads and sessions.
Row ids are positional (0..n-1) and stable for the lifetime of the table.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from enum import Enum

from .errors import EmptyDataError, ParseError
from .formatting import epoch_day_to_iso, format_number, parse_date_token, parse_number_token

# Share of non-null tokens that must parse for a column to be numeric/temporal.
INFERENCE_THRESHOLD = 0.95

Value = int | float | str | None


class FieldType(str, Enum):
    QUANTITATIVE = "quantitative"
    NOMINAL = "nominal"
    ORDINAL = "ordinal"
    TEMPORAL = "temporal"


@dataclass(frozen=True)
class FieldMeta:
    """Per-column metadata: inferred type, domain, and null count."""

    name: str
    inferred_type: FieldType
    domain: tuple
    null_count: int

    @property
    def is_numeric(self) -> bool:
        return self.inferred_type in (FieldType.QUANTITATIVE, FieldType.TEMPORAL)


@dataclass(frozen=True)
class DataTable:
    fields: tuple[FieldMeta, ...]
    rows: tuple[dict, ...]

    @property
    def row_ids(self) -> range:
        return range(len(self.rows))

    def field(self, name: str) -> FieldMeta:
        for meta in self.fields:
            if meta.name == name:
                return meta
        raise KeyError(name)

    def has_field(self, name: str) -> bool:
        return any(meta.name == name for meta in self.fields)

    def value(self, row_id: int, field: str) -> Value:
        return self.rows[row_id][field]

    def values(self, field: str) -> list[Value]:
        return [row[field] for row in self.rows]


def format_cell(value: Value, field_type: FieldType) -> str:
    """Render a stored value for labels and speech."""
    if value is None:
        return "empty"
    if field_type == FieldType.TEMPORAL:
        return epoch_day_to_iso(value)
    if isinstance(value, (int, float)):
        return format_number(value)
    return str(value)


def load_data(text: str, format: str = "delimited") -> DataTable:
    """Load a dataset from delimited (CSV) or structured (JSON array) text.

    Types are inferred per column: quantitative if >=95% of non-null tokens
    parse as finite numbers, temporal if >=95% parse as ISO-8601 dates,
    nominal otherwise. Sub-threshold unparsable tokens in a numeric or
    temporal column become nulls.
    """
    if format == "delimited":
        header, cells = _read_delimited(text)
    elif format == "structured":
        header, cells = _read_structured(text)
    else:
        raise ValueError(f"unknown data format: {format!r}")
    if not cells:
        raise EmptyDataError("dataset has a header but zero data rows")

    columns = {name: [row[i] for row in cells] for i, name in enumerate(header)}
    metas = []
    converted: dict[str, list[Value]] = {}
    for name in header:
        meta, values = _infer_column(name, columns[name])
        metas.append(meta)
        converted[name] = values
    rows = tuple({name: converted[name][i] for name in header} for i in range(len(cells)))
    return DataTable(fields=tuple(metas), rows=rows)


def _read_delimited(text: str) -> tuple[list[str], list[list[str | None]]]:
    try:
        reader = csv.reader(io.StringIO(text))
        parsed = list(reader)
    except csv.Error as exc:
        raise ParseError(f"malformed delimited data: {exc}", line=getattr(reader, "line_num", None)) from exc
    parsed = [row for row in parsed if row]  # blank trailing lines
    if not parsed:
        raise EmptyDataError("dataset is empty")
    header = [name.strip() for name in parsed[0]]
    if len(set(header)) != len(header):
        raise ParseError("duplicate column name in header", line=1)
    width = len(header)
    rows: list[list[str | None]] = []
    for i, row in enumerate(parsed[1:], start=2):
        if len(row) != width:
            raise ParseError(f"expected {width} columns, found {len(row)}", line=i)
        rows.append([cell if cell.strip() != "" else None for cell in row])
    return header, rows


def _read_structured(text: str) -> tuple[list[str], list[list[str | None]]]:
    try:
        records = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed structured data: {exc.msg}", line=exc.lineno, column=exc.colno) from exc
    if not isinstance(records, list):
        raise ParseError("structured data must be an array of flat records")
    if not records:
        raise EmptyDataError("dataset has zero records")
    header: list[str] = []
    for i, record in enumerate(records):
        if not isinstance(record, dict):
            raise ParseError(f"record {i} is not an object")
        for key in record:
            if key not in header:
                header.append(key)
    rows = []
    for i, record in enumerate(records):
        row: list[str | None] = []
        for name in header:
            value = record.get(name)
            if value is None:
                row.append(None)
            elif isinstance(value, bool) or isinstance(value, (list, dict)):
                raise ParseError(f"record {i}, field {name!r}: unsupported value type")
            elif isinstance(value, (int, float)):
                row.append(repr(value))
            elif isinstance(value, str):
                row.append(value if value.strip() != "" else None)
            else:
                raise ParseError(f"record {i}, field {name!r}: unsupported value type")
        rows.append(row)
    return header, rows


def _infer_column(name: str, tokens: list[str | None]) -> tuple[FieldMeta, list[Value]]:
    present = [t for t in tokens if t is not None]
    if not present:
        return FieldMeta(name, FieldType.NOMINAL, (), len(tokens)), [None] * len(tokens)

    numbers = [parse_number_token(t) for t in present]
    n_numeric = sum(1 for v in numbers if v is not None)
    if n_numeric / len(present) >= INFERENCE_THRESHOLD:
        values = [None if t is None else parse_number_token(t) for t in tokens]
        return _numeric_meta(name, FieldType.QUANTITATIVE, values), values

    days = [parse_date_token(t) for t in present]
    n_temporal = sum(1 for v in days if v is not None)
    if n_temporal / len(present) >= INFERENCE_THRESHOLD:
        values = [None if t is None else parse_date_token(t) for t in tokens]
        return _numeric_meta(name, FieldType.TEMPORAL, values), values

    values = [None if t is None else str(t) for t in tokens]
    categories: list[str] = []
    for v in values:
        if v is not None and v not in categories:
            categories.append(v)
    meta = FieldMeta(name, FieldType.NOMINAL, tuple(categories), values.count(None))
    return meta, values


def _numeric_meta(name: str, field_type: FieldType, values: list[Value]) -> FieldMeta:
    present = [v for v in values if v is not None]
    domain = (min(present), max(present)) if present else ()
    return FieldMeta(name, field_type, domain, values.count(None))


def categorical_domain(table: DataTable, field_name: str, order: tuple[str, ...] | None = None) -> list[Value]:
    """Distinct non-null values of a column viewed categorically.

    Returns raw stored values in first-appearance order, or in the explicit
    `order` (given as display strings) with unlisted values appended.
    """
    meta = table.field(field_name)
    seen: list[Value] = []
    for value in table.values(field_name):
        if value is not None and value not in seen:
            seen.append(value)
    if not order:
        return seen
    by_label = {format_cell(v, meta.inferred_type): v for v in seen}
    ordered = [by_label[label] for label in order if label in by_label]
    ordered.extend(v for v in seen if v not in ordered)
    return ordered
