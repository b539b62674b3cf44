"""Row selections: predicates over the table plus their materialized members.

A Selection keeps both the predicate (a conjunction of per-field constraints)
and the sorted member row ids, so tests can re-derive membership from the
predicate with an independent scan.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .errors import TypeMismatchError
from .intervals import Interval
from .tabular import DataTable, FieldMeta, FieldType, Value


@dataclass(frozen=True)
class IntervalConstraint:
    field: str
    lo: float
    hi: float
    closed_low: bool = True
    closed_high: bool = True

    def matches(self, value: Value) -> bool:
        if value is None or isinstance(value, str):
            return False
        if value < self.lo or (value == self.lo and not self.closed_low):
            return False
        if value > self.hi or (value == self.hi and not self.closed_high):
            return False
        return True

    def matches_row(self, table: DataTable, row_id: int) -> bool:
        return self.matches(table.rows[row_id][self.field])


@dataclass(frozen=True)
class CategoryConstraint:
    field: str
    values: tuple

    def matches(self, value: Value) -> bool:
        return value is not None and value in self.values

    def matches_row(self, table: DataTable, row_id: int) -> bool:
        return self.matches(table.rows[row_id][self.field])


@dataclass(frozen=True)
class NonNullConstraint:
    field: str

    def matches(self, value: Value) -> bool:
        return value is not None

    def matches_row(self, table: DataTable, row_id: int) -> bool:
        return table.rows[row_id][self.field] is not None


@dataclass(frozen=True)
class RowIdConstraint:
    """Pins a selection to explicit rows (used by datum leaves and cells)."""

    row_ids: tuple[int, ...]

    def matches_row(self, table: DataTable, row_id: int) -> bool:
        return row_id in self.row_ids


Constraint = IntervalConstraint | CategoryConstraint | NonNullConstraint | RowIdConstraint


@dataclass(frozen=True)
class Selection:
    constraints: tuple
    member_row_ids: tuple[int, ...]

    @property
    def count(self) -> int:
        return len(self.member_row_ids)


def select(table: DataTable, constraints: tuple | list) -> Selection:
    """Materialize the rows satisfying every constraint."""
    constraints = tuple(constraints)
    members = tuple(
        row_id
        for row_id in table.row_ids
        if all(c.matches_row(table, row_id) for c in constraints)
    )
    return Selection(constraints=constraints, member_row_ids=members)


def narrow(table: DataTable, base: Selection, extra: Constraint) -> Selection:
    """Refine an existing selection with one more constraint."""
    members = tuple(row_id for row_id in base.member_row_ids if extra.matches_row(table, row_id))
    return Selection(constraints=base.constraints + (extra,), member_row_ids=members)


def pin_row(base: Selection, row_id: int) -> Selection:
    """A single-row selection whose predicate pins exactly that row."""
    return Selection(
        constraints=base.constraints + (RowIdConstraint((row_id,)),),
        member_row_ids=(row_id,),
    )


def interval_constraint(field_name: str, interval: Interval) -> IntervalConstraint:
    return IntervalConstraint(
        field=field_name,
        lo=interval.lo,
        hi=interval.hi,
        closed_low=interval.closed_low,
        closed_high=interval.closed_high,
    )


def group_by_category(
    table: DataTable,
    field: FieldMeta,
    *,
    as_type: FieldType | None = None,
    categories: list[Value] | None = None,
) -> list[tuple[Value, Selection]]:
    """One (category, Selection) per distinct non-null value, in domain order.

    `as_type` lets a spec treat a numeric column categorically (e.g. a year
    column declared nominal); without it the field's inferred type applies.
    """
    effective = as_type or field.inferred_type
    if effective in (FieldType.QUANTITATIVE, FieldType.TEMPORAL):
        raise TypeMismatchError(
            f"field {field.name!r} is {effective.value}; categorical grouping needs a nominal or ordinal view"
        )
    if categories is None:
        categories = []
        for value in table.values(field.name):
            if value is not None and value not in categories:
                categories.append(value)
    groups = []
    for category in categories:
        constraint = CategoryConstraint(field=field.name, values=(category,))
        members = tuple(rid for rid in table.row_ids if constraint.matches(table.rows[rid][field.name]))
        groups.append((category, Selection(constraints=(constraint,), member_row_ids=members)))
    return groups


def grid_cells(
    table: DataTable,
    x_field: str,
    x_intervals: list[Interval],
    y_field: str,
    y_intervals: list[Interval],
) -> list[list[Selection]]:
    """|x| x |y| cell selections, indexed [col][row] with row 0 at the bottom.

    Every datum non-null in both fields lands in exactly one cell: intervals
    are half-open with the final one closed.
    """
    cells = [
        [
            Selection(
                constraints=(
                    interval_constraint(x_field, x_intervals[ci]),
                    interval_constraint(y_field, y_intervals[ri]),
                ),
                member_row_ids=(),
            )
            for ri in range(len(y_intervals))
        ]
        for ci in range(len(x_intervals))
    ]
    buckets: dict[tuple[int, int], list[int]] = {}
    for row_id in table.row_ids:
        xv = table.rows[row_id][x_field]
        yv = table.rows[row_id][y_field]
        if xv is None or yv is None or isinstance(xv, str) or isinstance(yv, str):
            continue
        ci = _locate_index(x_intervals, xv)
        ri = _locate_index(y_intervals, yv)
        if ci is None or ri is None:
            continue
        buckets.setdefault((ci, ri), []).append(row_id)
    for (ci, ri), members in buckets.items():
        cell = cells[ci][ri]
        cells[ci][ri] = Selection(constraints=cell.constraints, member_row_ids=tuple(members))
    return cells


def _locate_index(intervals: list[Interval], value: float) -> int | None:
    for i, interval in enumerate(intervals):
        if interval.contains(value):
            return i
    return None


@dataclass(frozen=True)
class NumericStats:
    minimum: float
    maximum: float
    mean: float
    count: int


@dataclass(frozen=True)
class Summary:
    """Statistics over a selection: overall count plus per-field breakdowns."""

    count: int
    numeric: dict = dc_field(default_factory=dict)
    categories: dict = dc_field(default_factory=dict)


def summarize(selection: Selection, table: DataTable, fields_in_scope: list[str] | None = None) -> Summary:
    """Per-field statistics over the selection's non-null member values.

    Numeric fields get min/max/mean plus their own non-null count; nominal
    fields get a count per category (domain order). Fields with no non-null
    member values are absent from the result.
    """
    names = fields_in_scope if fields_in_scope is not None else [m.name for m in table.fields]
    numeric: dict[str, NumericStats] = {}
    categories: dict[str, dict[str, int]] = {}
    for name in names:
        meta = table.field(name)
        values = [table.rows[rid][name] for rid in selection.member_row_ids]
        present = [v for v in values if v is not None]
        if not present:
            continue
        if meta.is_numeric:
            numeric[name] = NumericStats(
                minimum=min(present),
                maximum=max(present),
                mean=sum(present) / len(present),
                count=len(present),
            )
        else:
            counts: dict[str, int] = {}
            for category in meta.domain:
                tally = sum(1 for v in present if v == category)
                if tally:
                    counts[category] = tally
            # values outside the inferred domain (categorical view of numbers)
            for v in present:
                key = v
                if key not in counts:
                    counts[key] = sum(1 for u in present if u == key)
            categories[name] = counts
    return Summary(count=selection.count, numeric=numeric, categories=categories)
