"""Axis interval computation with nice (1/2/5 x 10^k) boundaries."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import TypeMismatchError
from .formatting import epoch_day_to_iso, format_number
from .tabular import FieldMeta, FieldType

_NICE_MANTISSAS = (1.0, 2.0, 5.0)


@dataclass(frozen=True)
class Interval:
    """One half-open [lo, hi) slice of an axis; the final interval is closed."""

    lo: float
    hi: float
    closed_low: bool
    closed_high: bool
    label: str

    def contains(self, value: float) -> bool:
        if value < self.lo or (value == self.lo and not self.closed_low):
            return False
        if value > self.hi or (value == self.hi and not self.closed_high):
            return False
        return True


def nice_step(raw: float) -> float:
    """The {1,2,5}x10^k value nearest to `raw` (ties go to the smaller step)."""
    if raw <= 0:
        raise ValueError("step must be positive")
    exponent = math.floor(math.log10(raw))
    candidates = [m * 10.0**exponent for m in _NICE_MANTISSAS]
    candidates.append(10.0 ** (exponent + 1))
    candidates.append(10.0**exponent / 2.0)  # guard against log10 edge rounding
    return min(candidates, key=lambda c: (abs(c - raw), c))


def next_nice_step(step: float) -> float:
    """The smallest {1,2,5}x10^k value strictly greater than `step`."""
    exponent = math.floor(math.log10(step) + 1e-12)
    for mantissa in _NICE_MANTISSAS:
        candidate = mantissa * 10.0**exponent
        if candidate > step * (1 + 1e-12):
            return candidate
    return 10.0 ** (exponent + 1)


def _snap_div(value: float, step: float, mode: str) -> int:
    quotient = value / step
    nearest = round(quotient)
    if abs(quotient - nearest) <= 1e-9 * max(1.0, abs(quotient)):
        return int(nearest)
    return math.floor(quotient) if mode == "floor" else math.ceil(quotient)


def compute_intervals(field: FieldMeta, target_count: int) -> list[Interval]:
    """Tile a quantitative or temporal field's domain into nice intervals.

    Boundaries are multiples of the nice step nearest to range/target_count
    (escalated when that would exceed target_count + 2 intervals); the outer
    boundaries are clipped back to the data min/max so the intervals tile the
    domain exactly. A single-valued domain yields one doubly-closed interval.
    """
    if not field.is_numeric:
        raise TypeMismatchError(f"field {field.name!r} is {field.inferred_type.value}; intervals need a numeric field")
    if target_count < 1:
        raise ValueError("target_count must be >= 1")
    if not field.domain:
        return []
    lo, hi = field.domain
    temporal = field.inferred_type == FieldType.TEMPORAL
    if lo == hi:
        return [Interval(lo, hi, True, True, _label(lo, hi, temporal))]

    step = nice_step((hi - lo) / target_count)
    if temporal and step < 1:
        step = 1.0
    while _boundary_count(lo, hi, step) - 1 > target_count + 2:
        step = next_nice_step(step)

    first = _snap_div(lo, step, "floor")
    count = _boundary_count(lo, hi, step)
    boundaries = [(first + i) * step for i in range(count)]
    boundaries[0] = lo
    boundaries[-1] = hi

    intervals = []
    for i in range(len(boundaries) - 1):
        last = i == len(boundaries) - 2
        intervals.append(
            Interval(
                lo=boundaries[i],
                hi=boundaries[i + 1],
                closed_low=True,
                closed_high=last,
                label=_label(boundaries[i], boundaries[i + 1], temporal),
            )
        )
    return intervals


def _boundary_count(lo: float, hi: float, step: float) -> int:
    return _snap_div(hi, step, "ceil") - _snap_div(lo, step, "floor") + 1


def _label(lo: float, hi: float, temporal: bool) -> str:
    if temporal:
        return f"{epoch_day_to_iso(lo)}–{epoch_day_to_iso(hi)}"
    return f"{format_number(lo)}–{format_number(hi)}"


def locate(intervals: list[Interval], value: float) -> int | None:
    """Index of the interval containing `value` under the half-open rule."""
    for i, interval in enumerate(intervals):
        if interval.contains(value):
            return i
    return None
